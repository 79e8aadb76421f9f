//! Squarefree monomial ideals, edge ideals and Alexander duality.
//!
//! A squarefree monomial is a subset of the variables, stored as a bit mask
//! over a [`VariableUniverse`]. Ideals keep their minimal generators sorted
//! by `(degree, mask)`, so two ideals over the same universe are equal iff
//! their generator lists are equal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{bit, bits, low_mask, sort_canonical, Graph, VertexSet};

/// Ordered list of distinct variable names; variable `k` (1-based) is
/// `names[k - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableUniverse {
    names: Vec<String>,
}

impl VariableUniverse {
    pub const MAX_VARIABLES: usize = 64;

    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.len() > Self::MAX_VARIABLES {
            return Err(Error::SizeGuard {
                what: "variable count",
                got: names.len(),
                limit: Self::MAX_VARIABLES,
            });
        }
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidIdeal(format!("variable `{}` repeated", w[0])));
        }
        Ok(VariableUniverse { names })
    }

    /// `x1, …, xn`.
    pub fn indexed(n: usize) -> Result<Self> {
        VariableUniverse::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of the 1-based variable `k`.
    pub fn name(&self, k: usize) -> &str {
        &self.names[k - 1]
    }

    /// 1-based position of `name`.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|p| p + 1)
    }
}

/// A squarefree monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquarefreeIdeal {
    universe: VariableUniverse,
    gens: Vec<u64>,
}

/// Keeps the inclusion-minimal masks, deduplicated, in canonical order.
pub(crate) fn minimalize(mut masks: Vec<u64>) -> Vec<u64> {
    sort_canonical(&mut masks);
    masks.dedup();
    let mut out: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        // Earlier entries are never larger, so only they can be subsets.
        if !out.iter().any(|&g| g & !m == 0) {
            out.push(m);
        }
    }
    out
}

/// Minimal transversals (hitting sets) of the hypergraph `edges`.
///
/// Branches on the variables of an uncovered edge with the fewest
/// variables; variables already tried in an earlier sibling branch are
/// forbidden, so every transversal is produced by at most one leaf.
pub(crate) fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    fn rec(edges: &[u64], chosen: u64, forbidden: u64, out: &mut Vec<u64>) {
        let mut pick: Option<u64> = None;
        for &e in edges {
            if e & chosen != 0 {
                continue;
            }
            let free = e & !forbidden;
            if free == 0 {
                return;
            }
            if pick.is_none_or(|p| free.count_ones() < p.count_ones()) {
                pick = Some(free);
            }
        }
        let Some(free) = pick else {
            out.push(chosen);
            return;
        };
        let mut forbid = forbidden;
        for v in bits(free) {
            rec(edges, chosen | bit(v), forbid, out);
            forbid |= bit(v);
        }
    }
    let mut out = Vec::new();
    rec(edges, 0, 0, &mut out);
    minimalize(out)
}

impl SquarefreeIdeal {
    /// Builds the ideal generated by `gens` (0-based masks), reduced to its
    /// minimal generators. Empty monomials (the unit ideal) are rejected.
    pub fn new(universe: VariableUniverse, gens: Vec<u64>) -> Result<Self> {
        let all = low_mask(universe.len());
        for &g in &gens {
            if g == 0 {
                return Err(Error::InvalidIdeal("empty generator".into()));
            }
            if g & !all != 0 {
                return Err(Error::InvalidIdeal(format!(
                    "generator uses variable {} outside a universe of {}",
                    bits(g & !all).next().unwrap() + 1,
                    universe.len()
                )));
            }
        }
        Ok(SquarefreeIdeal {
            universe,
            gens: minimalize(gens),
        })
    }

    /// Builds from 1-based variable index lists.
    pub fn from_index_lists(universe: VariableUniverse, gens: &[Vec<usize>]) -> Result<Self> {
        let n = universe.len();
        let mut masks = Vec::with_capacity(gens.len());
        for g in gens {
            let mut m = 0u64;
            for &k in g {
                if k == 0 || k > n {
                    return Err(Error::InvalidIdeal(format!("variable index {k} out of range")));
                }
                if m & bit(k - 1) != 0 {
                    return Err(Error::InvalidIdeal(format!("variable index {k} repeated")));
                }
                m |= bit(k - 1);
            }
            masks.push(m);
        }
        SquarefreeIdeal::new(universe, masks)
    }

    /// `I_G`, one generator `x_i x_j` per edge, over `x1..xn`.
    pub fn edge_ideal(g: &Graph) -> Result<Self> {
        g.require_no_isolated()?;
        SquarefreeIdeal::new(VariableUniverse::indexed(g.n())?, g.edge_masks())
    }

    /// Edge ideal with caller-supplied variable names (one per vertex).
    pub fn edge_ideal_named(g: &Graph, universe: VariableUniverse) -> Result<Self> {
        g.require_no_isolated()?;
        if universe.len() != g.n() {
            return Err(Error::InvalidArgument(format!(
                "{} variable names for {} vertices",
                universe.len(),
                g.n()
            )));
        }
        SquarefreeIdeal::new(universe, g.edge_masks())
    }

    /// `I_{n,d}`: all squarefree monomials of degree `d` in `n` variables.
    pub fn squarefree_veronese(n: usize, d: usize) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::InvalidArgument(format!("degree {d} not in 1..={n}")));
        }
        if n > 24 {
            return Err(Error::SizeGuard {
                what: "variable count for squarefree Veronese",
                got: n,
                limit: 24,
            });
        }
        let gens = (0..=low_mask(n)).filter(|m| m.count_ones() as usize == d).collect();
        SquarefreeIdeal::new(VariableUniverse::indexed(n)?, gens)
    }

    pub fn universe(&self) -> &VariableUniverse {
        &self.universe
    }

    /// Minimal generators as 0-based masks, canonical order.
    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn generator_sets(&self) -> Vec<VertexSet> {
        self.gens.iter().map(|&g| VertexSet::from_mask(g)).collect()
    }

    /// Number of minimal generators; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The common degree of all generators, if there is one.
    pub fn single_degree(&self) -> Option<usize> {
        let d = self.gens.first()?.count_ones();
        self.gens
            .iter()
            .all(|g| g.count_ones() == d)
            .then_some(d as usize)
    }

    /// `I^∨`: generated by the products of the variables of each minimal
    /// prime, i.e. the minimal transversals of the generator supports.
    pub fn alexander_dual(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(SquarefreeIdeal {
            universe: self.universe.clone(),
            gens: minimal_transversals(&self.gens),
        })
    }

    /// Supports of the minimal primes, canonical order.
    pub fn minimal_primes(&self) -> Result<Vec<VertexSet>> {
        Ok(self.alexander_dual()?.generator_sets())
    }

    /// Image under the variable map `map[k] = target index` (both 0-based),
    /// re-minimalised. A generator whose image would repeat a variable is an
    /// error.
    pub fn substitute(&self, target: &VariableUniverse, map: &[usize]) -> Result<Self> {
        if map.len() != self.universe.len() {
            return Err(Error::Substitution(format!(
                "map covers {} of {} variables",
                map.len(),
                self.universe.len()
            )));
        }
        if let Some(&t) = map.iter().find(|&&t| t >= target.len()) {
            return Err(Error::Substitution(format!(
                "image index {} outside the target universe",
                t + 1
            )));
        }
        let mut out = Vec::with_capacity(self.gens.len());
        for &g in &self.gens {
            let image = bits(g).fold(0u64, |m, v| m | bit(map[v]));
            if image.count_ones() != g.count_ones() {
                return Err(Error::Substitution(format!(
                    "generator {} collapses to a non-squarefree monomial",
                    self.monomial_text(g)
                )));
            }
            out.push(image);
        }
        SquarefreeIdeal::new(target.clone(), out)
    }

    /// Substitution given by variable names.
    pub fn substitute_names(
        &self,
        target: &VariableUniverse,
        pairs: &[(String, String)],
    ) -> Result<Self> {
        let mut map: Vec<Option<usize>> = vec![None; self.universe.len()];
        for (from, to) in pairs {
            let f = self
                .universe
                .position(from)
                .ok_or_else(|| Error::Substitution(format!("unknown source variable `{from}`")))?;
            let t = target
                .position(to)
                .ok_or_else(|| Error::Substitution(format!("unknown target variable `{to}`")))?;
            map[f - 1] = Some(t - 1);
        }
        let support = self.gens.iter().fold(0u64, |m, &g| m | g);
        let mut full = Vec::with_capacity(map.len());
        for (k, t) in map.into_iter().enumerate() {
            match t {
                Some(t) => full.push(t),
                None if support & bit(k) != 0 => {
                    return Err(Error::Substitution(format!(
                        "variable `{}` has no image",
                        self.universe.names[k]
                    )))
                }
                // Unused variables never reach a generator.
                None => full.push(0),
            }
        }
        self.substitute(target, &full)
    }

    fn monomial_text(&self, g: u64) -> String {
        bits(g)
            .map(|v| self.universe.names[v].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Comma-separated monomials, e.g. `x1*x2, x2*x3`.
    pub fn to_text(&self) -> String {
        self.gens
            .iter()
            .map(|&g| self.monomial_text(g))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Parses the text form over a known universe.
    pub fn parse_text(universe: VariableUniverse, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        let mut column = 1;
        for part in text.split(',') {
            let mut m = 0u64;
            for name in part.split('*') {
                let name = name.trim();
                let v = universe.position(name).ok_or_else(|| Error::Parse {
                    line: 1,
                    column,
                    message: format!("unknown variable `{name}`"),
                })?;
                if m & bit(v - 1) != 0 {
                    return Err(Error::Parse {
                        line: 1,
                        column,
                        message: format!("variable `{name}` repeated in a monomial"),
                    });
                }
                m |= bit(v - 1);
            }
            gens.push(m);
            column += part.len() + 1;
        }
        SquarefreeIdeal::new(universe, gens)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: self.universe.names.clone(),
            gens: self
                .gens
                .iter()
                .map(|&g| bits(g).map(|v| v + 1).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        SquarefreeIdeal::from_index_lists(VariableUniverse::new(j.vars.clone())?, &j.gens)
    }
}

impl std::fmt::Display for SquarefreeIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

/// `{"vars": [names], "gens": [[1-based variable indices]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn worked_example() -> Graph {
        Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (2, 4), (3, 4), (4, 5)]).unwrap()
    }

    fn ideal(n: usize, text: &str) -> SquarefreeIdeal {
        SquarefreeIdeal::parse_text(VariableUniverse::indexed(n).unwrap(), text).unwrap()
    }

    // Independent oracle: brute force over all subsets of the variables.
    fn brute_transversals(n: usize, edges: &[u64]) -> Vec<u64> {
        let hits = |m: u64| edges.iter().all(|&e| e & m != 0);
        let mut out: Vec<u64> = (0..=low_mask(n))
            .filter(|&m| hits(m) && bits(m).all(|v| !hits(m & !bit(v))))
            .collect();
        sort_canonical(&mut out);
        out
    }

    #[test]
    fn edge_ideals() {
        let tri = SquarefreeIdeal::edge_ideal(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(tri, ideal(3, "x1*x2, x1*x3, x2*x3"));
        let line = Graph::from_edges(4, &[(1, 2), (1, 3), (2, 4)]).unwrap();
        assert_eq!(
            SquarefreeIdeal::edge_ideal(&line).unwrap(),
            ideal(4, "x1*x2, x1*x3, x2*x4")
        );
        assert_eq!(SquarefreeIdeal::edge_ideal(&worked_example()).unwrap().len(), 6);
        let iso = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(SquarefreeIdeal::edge_ideal(&iso), Err(Error::IsolatedVertex(3)));
    }

    #[test]
    fn duals_of_examples() {
        let i = SquarefreeIdeal::edge_ideal(&worked_example()).unwrap();
        assert_eq!(
            i.alexander_dual().unwrap(),
            ideal(5, "x2*x3*x4, x1*x3*x4, x2*x3*x5, x1*x2*x4")
        );
        let tri = SquarefreeIdeal::edge_ideal(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(tri.alexander_dual().unwrap(), tri);
        let p4 = SquarefreeIdeal::edge_ideal(&Graph::path(4).unwrap()).unwrap();
        assert_eq!(p4.alexander_dual().unwrap(), ideal(4, "x2*x3, x1*x3, x2*x4"));
        let zero = SquarefreeIdeal::new(VariableUniverse::indexed(2).unwrap(), vec![]).unwrap();
        assert_eq!(zero.alexander_dual(), Err(Error::ZeroIdeal));
    }

    #[test]
    fn minimal_primes_of_examples() {
        let line = Graph::from_edges(4, &[(1, 2), (1, 3), (2, 4)]).unwrap();
        let primes = SquarefreeIdeal::edge_ideal(&line).unwrap().minimal_primes().unwrap();
        let want: Vec<_> = [[1, 2], [1, 4], [2, 3]]
            .iter()
            .map(|s| VertexSet::from_vertices(s))
            .collect();
        let mut got = primes.clone();
        got.sort();
        let mut want = want;
        want.sort();
        assert_eq!(got, want);
        let p4 = SquarefreeIdeal::edge_ideal(&Graph::path(4).unwrap()).unwrap();
        assert_eq!(
            p4.minimal_primes().unwrap(),
            Graph::path(4).unwrap().minimal_vertex_covers()
        );
    }

    #[test]
    fn veronese() {
        assert_eq!(
            SquarefreeIdeal::squarefree_veronese(3, 2).unwrap(),
            ideal(3, "x1*x2, x1*x3, x2*x3")
        );
        let i42 = SquarefreeIdeal::squarefree_veronese(4, 2).unwrap();
        assert_eq!(i42.len(), 6);
        assert_eq!(
            i42.alexander_dual().unwrap(),
            SquarefreeIdeal::squarefree_veronese(4, 3).unwrap()
        );
        for n in 1..=7 {
            for d in 1..=n {
                assert_eq!(
                    SquarefreeIdeal::squarefree_veronese(n, d).unwrap().alexander_dual().unwrap(),
                    SquarefreeIdeal::squarefree_veronese(n, n - d + 1).unwrap()
                );
            }
        }
        assert!(SquarefreeIdeal::squarefree_veronese(3, 0).is_err());
        assert!(SquarefreeIdeal::squarefree_veronese(3, 4).is_err());
    }

    #[test]
    fn substitution() {
        // P4 on 1, 2, 3, 3' with 3' identified with 3 gives the triangle.
        let names = ["x1", "x2", "x3", "x3'"].map(String::from).to_vec();
        let src = SquarefreeIdeal::parse_text(
            VariableUniverse::new(names).unwrap(),
            "x1*x2, x1*x3, x2*x3'",
        )
        .unwrap();
        let tgt = VariableUniverse::indexed(3).unwrap();
        let tri = SquarefreeIdeal::edge_ideal(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(src.substitute(&tgt, &[0, 1, 2, 2]).unwrap(), tri);
        assert_eq!(tri.substitute(&tgt, &[0, 1, 2]).unwrap(), tri);

        let e = ideal(2, "x1*x2");
        assert!(matches!(
            e.substitute(&VariableUniverse::indexed(2).unwrap(), &[0, 0]),
            Err(Error::Substitution(_))
        ));
        assert!(matches!(
            e.substitute(&VariableUniverse::indexed(1).unwrap(), &[0, 1]),
            Err(Error::Substitution(_))
        ));
    }

    #[test]
    fn text_and_json() {
        let i = ideal(5, "x2*x3*x4, x1*x3*x4");
        assert_eq!(i.to_text(), "x1*x3*x4, x2*x3*x4");
        let j = i.to_json();
        assert_eq!(j.gens, vec![vec![1, 3, 4], vec![2, 3, 4]]);
        assert_eq!(SquarefreeIdeal::from_json(&j).unwrap(), i);
        assert!(matches!(
            SquarefreeIdeal::parse_text(VariableUniverse::indexed(2).unwrap(), "x1*x9"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn non_minimal_generators_are_dropped() {
        let i = ideal(3, "x1*x2*x3, x1*x2, x1*x2");
        assert_eq!(i.generators(), &[0b011]);
    }

    proptest! {
        #[test]
        fn transversals_match_brute_force(n in 1usize..8, raw in proptest::collection::vec(1u64..256, 1..8)) {
            let edges: Vec<u64> = raw.iter().map(|m| m & low_mask(n)).filter(|&m| m != 0).collect();
            prop_assume!(!edges.is_empty());
            prop_assert_eq!(minimal_transversals(&edges), brute_transversals(n, &edges));
        }

        #[test]
        fn dual_is_an_involution(n in 1usize..9, raw in proptest::collection::vec(1u64..512, 1..10)) {
            let gens: Vec<u64> = raw.iter().map(|m| m & low_mask(n)).filter(|&m| m != 0).collect();
            prop_assume!(!gens.is_empty());
            let i = SquarefreeIdeal::new(VariableUniverse::indexed(n).unwrap(), gens).unwrap();
            let back = i.alexander_dual().unwrap().alexander_dual().unwrap();
            prop_assert_eq!(back, i);
        }
    }
}
