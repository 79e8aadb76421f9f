//! Relation matrices of binomial type, generic matrices `A_T`, generic ideals
//! `J_T` and generic graphs `G_T` attached to trees.
//!
//! For a tree `T` on `1..=m` every edge `{i, j}` contributes the two pair
//! variables `x_{ij}` and `x_{ji}`, named `x{i}_{j}` and ordered by `(i, j)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{bit, Graph, Tree};
use crate::ideals::{SquarefreeIdeal, VariableUniverse};

/// A row with `+x_{var_a}` in column `col_a`, `-x_{var_b}` in column
/// `col_b` and zeros elsewhere. Columns and variables are 1-based and
/// `col_a < col_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinomialRow {
    pub col_a: usize,
    pub var_a: usize,
    pub col_b: usize,
    pub var_b: usize,
}

/// An `(m - 1) × m` matrix whose rows are of binomial type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    m: usize,
    universe: VariableUniverse,
    rows: Vec<BinomialRow>,
}

/// A polynomial with integer coefficients; a monomial is the sorted list of
/// its 1-based variable indices, repeated according to multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Vec<usize>, i64>,
}

impl Polynomial {
    fn constant(c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Vec::new(), c);
        }
        Polynomial { terms }
    }

    fn add_scaled(&mut self, other: &Polynomial, sign: i64, var: usize) {
        for (mono, &c) in &other.terms {
            let mut m = mono.clone();
            m.insert(m.partition_point(|&v| v <= var), var);
            let entry = self.terms.entry(m.clone()).or_insert(0);
            *entry += sign * c;
            if *entry == 0 {
                self.terms.remove(&m);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.terms.iter().map(|(m, &c)| (m.as_slice(), c))
    }

    /// `(±1, variables)` when the polynomial is a single monomial with
    /// coefficient `±1`.
    pub fn as_signed_monomial(&self) -> Option<(i64, &[usize])> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, &c) = self.terms.iter().next()?;
        (c == 1 || c == -1).then_some((c, m.as_slice()))
    }
}

impl RelationMatrix {
    pub fn new(m: usize, universe: VariableUniverse, rows: Vec<BinomialRow>) -> Result<Self> {
        if m < 1 || rows.len() + 1 != m {
            return Err(Error::InvalidArgument(format!(
                "{} rows for {m} columns, expected {}",
                rows.len(),
                m.saturating_sub(1)
            )));
        }
        for r in &rows {
            if !(1 <= r.col_a && r.col_a < r.col_b && r.col_b <= m) {
                return Err(Error::InvalidArgument(format!(
                    "row columns ({}, {}) invalid for {m} columns",
                    r.col_a, r.col_b
                )));
            }
            for v in [r.var_a, r.var_b] {
                if v == 0 || v > universe.len() {
                    return Err(Error::InvalidArgument(format!("variable index {v} out of range")));
                }
            }
        }
        Ok(RelationMatrix { m, universe, rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn universe(&self) -> &VariableUniverse {
        &self.universe
    }

    pub fn rows(&self) -> &[BinomialRow] {
        &self.rows
    }

    /// Entry `(k, l)` (1-based) as `(sign, variable)`, `None` for zero.
    pub fn entry(&self, k: usize, l: usize) -> Option<(i64, usize)> {
        let r = &self.rows[k - 1];
        if l == r.col_a {
            Some((1, r.var_a))
        } else if l == r.col_b {
            Some((-1, r.var_b))
        } else {
            None
        }
    }

    /// The relation graph: columns joined when some row uses both.
    pub fn relation_graph(&self) -> Result<Graph> {
        let edges: Vec<_> = self.rows.iter().map(|r| (r.col_a, r.col_b)).collect();
        Graph::from_edges(self.m, &edges)
    }

    pub fn relation_tree(&self) -> Result<Tree> {
        Tree::new(self.relation_graph()?)
    }

    /// Signed maximal minors by Laplace expansion; entry `j - 1` is the
    /// determinant of the matrix with column `j` deleted.
    pub fn maximal_minors(&self) -> Vec<Polynomial> {
        (1..=self.m)
            .map(|j| {
                let cols: Vec<usize> = (1..=self.m).filter(|&l| l != j).collect();
                self.laplace(0, &cols)
            })
            .collect()
    }

    fn laplace(&self, k: usize, cols: &[usize]) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::constant(1);
        }
        let mut out = Polynomial::default();
        for (pos, &l) in cols.iter().enumerate() {
            let Some((sign, var)) = self.entry(k + 1, l) else {
                continue;
            };
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != l).collect();
            let sub = self.laplace(k + 1, &rest);
            let s = if pos % 2 == 0 { sign } else { -sign };
            out.add_scaled(&sub, s, var);
        }
        out
    }

    /// The ideal of maximal minors, provided every minor is `±` a squarefree
    /// monomial.
    pub fn minor_ideal(&self) -> Result<SquarefreeIdeal> {
        let mut gens = Vec::with_capacity(self.m);
        for (j, p) in self.maximal_minors().iter().enumerate() {
            let (_, vars) = p.as_signed_monomial().ok_or_else(|| {
                Error::InvalidIdeal(format!("minor {} is not a signed monomial", j + 1))
            })?;
            let mask = vars.iter().fold(0u64, |m, &v| m | bit(v - 1));
            if mask.count_ones() as usize != vars.len() {
                return Err(Error::InvalidIdeal(format!("minor {} is not squarefree", j + 1)));
            }
            gens.push(mask);
        }
        SquarefreeIdeal::new(self.universe.clone(), gens)
    }

    pub fn pretty(&self) -> String {
        let cell = |k: usize, l: usize| match self.entry(k, l) {
            Some((1, v)) => self.universe.name(v).to_string(),
            Some((_, v)) => format!("-{}", self.universe.name(v)),
            None => "0".to_string(),
        };
        let cells: Vec<Vec<String>> = (1..self.m)
            .map(|k| (1..=self.m).map(|l| cell(k, l)).collect())
            .collect();
        let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                format!("[ {} ]\n", line.join("  "))
            })
            .collect()
    }
}

/// `parent[r][v]`: the neighbour of `v` on the path towards `r` (0-based,
/// `parent[r][r] = r`).
fn parent_tables(t: &Tree) -> Vec<Vec<usize>> {
    let g = t.graph();
    let m = t.m();
    (0..m)
        .map(|r| {
            let mut parent = vec![usize::MAX; m];
            parent[r] = r;
            let mut queue = std::collections::VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                for w in g.neighbors(u + 1).vertices() {
                    if parent[w - 1] == usize::MAX {
                        parent[w - 1] = u;
                        queue.push_back(w - 1);
                    }
                }
            }
            parent
        })
        .collect()
}

/// `b(i, j)` and `e(i, j)`: the second and the second-to-last vertices of
/// the path from `i` to `j`.
pub fn path_endpoints(t: &Tree, i: usize, j: usize) -> Result<(usize, usize)> {
    t.graph().check_vertex(i)?;
    t.graph().check_vertex(j)?;
    if i == j {
        return Err(Error::InvalidArgument(format!("path endpoints need i ≠ j, got {i} twice")));
    }
    let p = parent_tables(t);
    Ok((p[j - 1][i - 1] + 1, p[i - 1][j - 1] + 1))
}

/// Oriented pairs `(i, j)` with `{i, j} ∈ E(T)`, sorted, and the matching
/// variable universe `x{i}_{j}`.
pub fn pair_universe(t: &Tree) -> Result<(Vec<(usize, usize)>, VariableUniverse)> {
    let mut pairs: Vec<(usize, usize)> = t
        .edges()
        .into_iter()
        .flat_map(|(i, j)| [(i, j), (j, i)])
        .collect();
    pairs.sort_unstable();
    let names = pairs.iter().map(|(i, j)| format!("x{i}_{j}")).collect();
    Ok((pairs, VariableUniverse::new(names)?))
}

fn pair_index(pairs: &[(usize, usize)], p: (usize, usize)) -> usize {
    pairs.binary_search(&p).expect("pair of a tree edge") + 1
}

fn require_edge(t: &Tree) -> Result<()> {
    if t.m() < 2 {
        return Err(Error::InvalidArgument("tree needs at least 2 vertices".into()));
    }
    Ok(())
}

/// `A_T`: row `k` belongs to the `k`-th edge `{i, j}`, `i < j`, in sorted
/// order and holds `x_{ij}` in column `i` and `-x_{ji}` in column `j`.
pub fn generic_matrix(t: &Tree) -> Result<RelationMatrix> {
    require_edge(t)?;
    let (pairs, universe) = pair_universe(t)?;
    let rows = t
        .edges()
        .into_iter()
        .map(|(i, j)| BinomialRow {
            col_a: i,
            var_a: pair_index(&pairs, (i, j)),
            col_b: j,
            var_b: pair_index(&pairs, (j, i)),
        })
        .collect();
    RelationMatrix::new(t.m(), universe, rows)
}

/// `J_T`, generated for each `j` by the product of `x_{i b(i,j)}` over
/// `i ≠ j`.
pub fn generic_ideal(t: &Tree) -> Result<SquarefreeIdeal> {
    require_edge(t)?;
    let (pairs, universe) = pair_universe(t)?;
    let p = parent_tables(t);
    let m = t.m();
    let gens = (0..m)
        .map(|j| {
            (0..m)
                .filter(|&i| i != j)
                .fold(0u64, |acc, i| acc | bit(pair_index(&pairs, (i + 1, p[j][i] + 1)) - 1))
        })
        .collect();
    SquarefreeIdeal::new(universe, gens)
}

/// `G_T` together with the oriented pair behind each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericGraph {
    pub graph: Graph,
    /// `pairs[v - 1]` is the pair `(i, j)` named by vertex `v`.
    pub pairs: Vec<(usize, usize)>,
    pub universe: VariableUniverse,
}

#[derive(Serialize, Deserialize)]
struct GenericGraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    vertex_names: Vec<String>,
}

impl GenericGraph {
    /// `I_{G_T}` over the pair variables.
    pub fn edge_ideal(&self) -> Result<SquarefreeIdeal> {
        SquarefreeIdeal::edge_ideal_named(&self.graph, self.universe.clone())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GenericGraphJson {
            n: self.graph.n(),
            edges: self.graph.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            vertex_names: self.universe.names().to_vec(),
        })
        .expect("generic graph serializes")
    }
}

/// `G_T`: for every pair `i ≠ j` of tree vertices the edge
/// `{(i, b(i,j)), (j, e(i,j))}`.
#[allow(clippy::needless_range_loop)]
pub fn generic_graph(t: &Tree) -> Result<GenericGraph> {
    require_edge(t)?;
    let (pairs, universe) = pair_universe(t)?;
    let p = parent_tables(t);
    let m = t.m();
    let mut edges = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let a = pair_index(&pairs, (i + 1, p[j][i] + 1));
            let b = pair_index(&pairs, (j + 1, p[i][j] + 1));
            edges.push((a, b));
        }
    }
    let graph = Graph::from_edges(pairs.len(), &edges)?;
    Ok(GenericGraph {
        graph,
        pairs,
        universe,
    })
}

/// For an inseparable bi-CM graph, the tree `T` with `G ≅ G_T` and a
/// bijection `f` (`f[v - 1]` is the vertex of `G_T` matched to `v`).
/// `None` when `G` is separable or not bi-CM.
pub fn recover_tree(g: &Graph) -> Result<Option<(Tree, Vec<usize>)>> {
    if g.n() < 2 || !g.is_connected() {
        return Ok(None);
    }
    g.require_no_isolated()?;
    if !crate::separation::is_inseparable(g)? {
        return Ok(None);
    }
    let cert = crate::bicm::certify_bicm(g, crate::FieldSpec::RATIONALS)?;
    if !cert.verdict {
        return Ok(None);
    }
    let dual = SquarefreeIdeal::edge_ideal(g)?.alexander_dual()?;
    let rt = crate::separation::first_relation_tree(&dual)?;
    let gt = generic_graph(&rt.tree)?;
    match crate::graphs::are_isomorphic(g, &gt.graph)? {
        Some(f) => Ok(Some((rt.tree, f))),
        None => Err(Error::Inconsistent(format!(
            "inseparable bi-CM graph {g:?} is not isomorphic to G_T of its relation tree"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2() -> Tree {
        Tree::from_edges(4, &[(1, 2), (1, 3), (2, 4)]).unwrap()
    }

    // Oracle: walk the path explicitly by DFS and read off its second and
    // second-to-last vertices.
    fn dfs_path(t: &Tree, i: usize, j: usize) -> Vec<usize> {
        fn go(g: &Graph, u: usize, j: usize, seen: &mut Vec<usize>) -> bool {
            seen.push(u);
            if u == j {
                return true;
            }
            for w in g.neighbors(u).vertices() {
                if !seen.contains(&w) && go(g, w, j, seen) {
                    return true;
                }
            }
            seen.pop();
            false
        }
        let mut path = Vec::new();
        assert!(go(t.graph(), i, j, &mut path));
        path
    }

    #[test]
    fn generic_matrices_of_star_and_path() {
        let b1 = generic_matrix(&Tree::star(4).unwrap()).unwrap();
        let text: Vec<String> = b1
            .rows()
            .iter()
            .map(|r| format!("{} {}", b1.universe().name(r.var_a), b1.universe().name(r.var_b)))
            .collect();
        assert_eq!(text, ["x1_2 x2_1", "x1_3 x3_1", "x1_4 x4_1"]);
        let cols: Vec<_> = b1.rows().iter().map(|r| (r.col_a, r.col_b)).collect();
        assert_eq!(cols, [(1, 2), (1, 3), (1, 4)]);

        let b2 = generic_matrix(&t2()).unwrap();
        let text: Vec<String> = b2
            .rows()
            .iter()
            .map(|r| format!("{} {}", b2.universe().name(r.var_a), b2.universe().name(r.var_b)))
            .collect();
        assert_eq!(text, ["x1_2 x2_1", "x1_3 x3_1", "x2_4 x4_2"]);
        assert_eq!(b2.entry(3, 2), Some((1, b2.universe().position("x2_4").unwrap())));
        assert_eq!(b2.entry(3, 4), Some((-1, b2.universe().position("x4_2").unwrap())));
        assert_eq!(b2.entry(3, 1), None);
        assert_eq!(b2.relation_tree().unwrap(), t2());
    }

    #[test]
    fn endpoints_match_explicit_paths() {
        let t = Tree::from_edges(4, &[(1, 3), (1, 2), (2, 4)]).unwrap();
        assert_eq!(path_endpoints(&t, 3, 4).unwrap(), (1, 2));
        assert_eq!(path_endpoints(&t, 1, 2).unwrap(), (2, 1));
        assert_eq!(path_endpoints(&Tree::star(4).unwrap(), 2, 3).unwrap(), (1, 1));
        assert!(path_endpoints(&t, 2, 2).is_err());
        let t6 = Tree::from_edges(6, &[(1, 2), (2, 3), (2, 4), (4, 5), (5, 6)]).unwrap();
        for i in 1..=6 {
            for j in (1..=6).filter(|&j| j != i) {
                let p = dfs_path(&t6, i, j);
                assert_eq!(path_endpoints(&t6, i, j).unwrap(), (p[1], p[p.len() - 2]));
            }
        }
    }

    #[test]
    fn single_edge() {
        let t = Tree::from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(generic_ideal(&t).unwrap().to_text(), "x1_2, x2_1");
        let gt = generic_graph(&t).unwrap();
        assert_eq!(gt.graph.edges(), [(1, 2)]);
        assert!(generic_ideal(&Tree::star(1).unwrap()).is_err());
    }

    #[test]
    fn three_vertex_path() {
        // 2 - 1 - 3
        let t = Tree::from_edges(3, &[(1, 2), (1, 3)]).unwrap();
        let j = generic_ideal(&t).unwrap();
        let u = j.universe().clone();
        let expected = SquarefreeIdeal::parse_text(u, "x2_1*x3_1, x1_2*x3_1, x1_3*x2_1").unwrap();
        assert_eq!(j, expected);
        assert_eq!(generic_matrix(&t).unwrap().minor_ideal().unwrap(), expected);

        let gt = generic_graph(&t).unwrap();
        let named: Vec<(String, String)> = gt
            .graph
            .edges()
            .into_iter()
            .map(|(a, b)| (gt.universe.name(a).into(), gt.universe.name(b).into()))
            .collect();
        let mut expect = vec![
            ("x1_2".to_string(), "x2_1".to_string()),
            ("x1_3".into(), "x3_1".into()),
            ("x2_1".into(), "x3_1".into()),
        ];
        expect.sort();
        let mut named = named;
        named.sort();
        assert_eq!(named, expect);
        assert!(crate::graphs::are_isomorphic(&gt.graph, &Graph::path(4).unwrap())
            .unwrap()
            .is_some());
    }

    #[test]
    fn star_generic_graph_is_triangle_with_pendants() {
        let gt = generic_graph(&Tree::star(4).unwrap()).unwrap();
        let name = |v: usize| gt.universe.name(v).to_string();
        let mut edges: Vec<(String, String)> = gt
            .graph
            .edges()
            .into_iter()
            .map(|(a, b)| (name(a), name(b)))
            .collect();
        edges.sort();
        let mut expected: Vec<(String, String)> = [
            ("x2_1", "x3_1"),
            ("x2_1", "x4_1"),
            ("x3_1", "x4_1"),
            ("x1_2", "x2_1"),
            ("x1_3", "x3_1"),
            ("x1_4", "x4_1"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        expected.sort();
        assert_eq!(edges, expected);
    }

    #[test]
    fn path_tree_generic_graph_follows_the_text_rule() {
        let gt = generic_graph(&t2()).unwrap();
        assert_eq!(gt.graph.n(), 6);
        assert_eq!(gt.graph.edge_count(), 6);
        let v = |s: &str| gt.universe.position(s).unwrap();
        for (a, b) in [
            ("x1_2", "x2_1"),
            ("x1_3", "x3_1"),
            ("x2_4", "x4_2"),
            ("x3_1", "x2_1"),
            ("x3_1", "x4_2"),
            ("x1_2", "x4_2"),
        ] {
            assert!(gt.graph.has_edge(v(a), v(b)), "{a} {b}");
        }
    }

    #[test]
    fn minors_agree_with_product_formula_and_dual() {
        let trees = [
            t2(),
            Tree::star(5).unwrap(),
            Tree::from_edges(6, &[(1, 2), (2, 3), (2, 4), (4, 5), (5, 6)]).unwrap(),
        ];
        for t in &trees {
            let a = generic_matrix(t).unwrap();
            let j = generic_ideal(t).unwrap();
            assert_eq!(a.minor_ideal().unwrap(), j);
            // Column j's minor is generator j of the product formula.
            let p = parent_tables(t);
            let (pairs, _) = pair_universe(t).unwrap();
            for (col, minor) in a.maximal_minors().iter().enumerate() {
                let (_, vars) = minor.as_signed_monomial().unwrap();
                let mut expect: Vec<usize> = (0..t.m())
                    .filter(|&i| i != col)
                    .map(|i| pair_index(&pairs, (i + 1, p[col][i] + 1)))
                    .collect();
                expect.sort();
                assert_eq!(vars, expect.as_slice());
            }
            let gt = generic_graph(t).unwrap();
            assert_eq!(gt.edge_ideal().unwrap().alexander_dual().unwrap(), j);
        }
    }

    #[test]
    fn laplace_cancels_repeated_terms() {
        // Rows (x1, -x1) in columns 1,2 twice would be singular; use a
        // non-binomial check through a repeated variable instead.
        let u = VariableUniverse::indexed(2).unwrap();
        let a = RelationMatrix::new(
            3,
            u,
            vec![
                BinomialRow { col_a: 1, var_a: 1, col_b: 2, var_b: 2 },
                BinomialRow { col_a: 1, var_a: 1, col_b: 3, var_b: 2 },
            ],
        )
        .unwrap();
        let minors = a.maximal_minors();
        // Deleting column 1: det [[-x2, 0], [0, -x2]] = x2^2.
        assert_eq!(minors[0].as_signed_monomial(), Some((1, &[2usize, 2][..])));
        assert!(a.minor_ideal().is_err());
    }
}
