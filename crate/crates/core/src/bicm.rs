//! The bi-CM certificate: every equivalent characterisation is evaluated
//! and cross-checked.
//!
//! For a graph `G` on `n` vertices with independence number `c` the
//! following are equivalent:
//!
//! * (a) `I_G` and `I_G^∨` are both Cohen-Macaulay;
//! * (b) `I_G` is Cohen-Macaulay and `|E(G)| = C(n-c+1, 2)`;
//! * (c) `I_G` is Cohen-Macaulay and `G` has `n-c+1` minimal vertex covers;
//! * (d) `β_i(I_G) = (i+1)·C(n-c+1, i+2)` for all `i`.
//!
//! A certificate that finds them disagreeing is an internal error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::ideals::SquarefreeIdeal;
use crate::par::Execution;
use crate::resolutions::{
    betti_table_with, cm_from_table, linear_from_table, FieldSpec, MAX_HOCHSTER_VARIABLES,
};

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
}

/// Observed value against the value a bi-CM graph must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub observed: usize,
    pub expected: usize,
}

impl CountCheck {
    pub fn holds(&self) -> bool {
        self.observed == self.expected
    }
}

/// `β_i(I_G)` against `(i+1)·C(n-c+1, i+2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiCheck {
    pub i: usize,
    pub observed: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiCmCertificate {
    pub verdict: bool,
    pub field: FieldSpec,
    pub n: usize,
    pub connected: bool,
    /// Independence number.
    pub c: usize,
    pub edge_count_check: CountCheck,
    pub cover_count_check: CountCheck,
    /// One row per homological degree up to `max(n-c-1, pd(I_G))`.
    pub betti_check: Vec<BettiCheck>,
    /// `I_G` is Cohen-Macaulay.
    pub cm_check: bool,
    /// `I_G^∨` has a linear resolution (equivalent to `cm_check`).
    pub linear_res_dual_check: bool,
    /// `I_G^∨` is Cohen-Macaulay.
    pub dual_cm_check: bool,
    /// `I_G` has a linear resolution (equivalent to `dual_cm_check`).
    pub linear_res_check: bool,
    /// Conditions (a) through (d), in order.
    pub conditions: [bool; 4],
}

impl BiCmCertificate {
    pub fn betti_holds(&self) -> bool {
        self.betti_check.iter().all(|b| b.observed == b.expected)
    }

    /// Human-readable table.
    pub fn pretty(&self) -> String {
        let mark = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        out.push_str(&format!("field                 {}\n", self.field));
        out.push_str(&format!("vertices n            {}\n", self.n));
        out.push_str(&format!("independence c        {}\n", self.c));
        out.push_str(&format!("connected             {}\n", mark(self.connected)));
        out.push_str(&format!(
            "edges                 {} (need {})\n",
            self.edge_count_check.observed, self.edge_count_check.expected
        ));
        out.push_str(&format!(
            "minimal covers        {} (need {})\n",
            self.cover_count_check.observed, self.cover_count_check.expected
        ));
        for b in &self.betti_check {
            out.push_str(&format!(
                "beta_{}(I_G)           {} (need {})\n",
                b.i, b.observed, b.expected
            ));
        }
        out.push_str(&format!("I_G Cohen-Macaulay    {}\n", mark(self.cm_check)));
        out.push_str(&format!("dual Cohen-Macaulay   {}\n", mark(self.dual_cm_check)));
        out.push_str(&format!("I_G linear            {}\n", mark(self.linear_res_check)));
        out.push_str(&format!("dual linear           {}\n", mark(self.linear_res_dual_check)));
        let [a, b, c, d] = self.conditions;
        out.push_str(&format!(
            "conditions a/b/c/d    {}/{}/{}/{}\n",
            mark(a),
            mark(b),
            mark(c),
            mark(d)
        ));
        out.push_str(&format!("bi-Cohen-Macaulay     {}\n", mark(self.verdict)));
        out
    }
}

/// Full certificate with the default execution mode.
pub fn certify_bicm(g: &Graph, field: FieldSpec) -> Result<BiCmCertificate> {
    certify_bicm_with(g, field, Execution::default())
}

pub fn certify_bicm_with(g: &Graph, field: FieldSpec, exec: Execution) -> Result<BiCmCertificate> {
    let n = g.n();
    if n > MAX_HOCHSTER_VARIABLES {
        return Err(Error::SizeGuard {
            what: "vertex count for certification",
            got: n,
            limit: MAX_HOCHSTER_VARIABLES,
        });
    }
    let ideal = SquarefreeIdeal::edge_ideal(g)?;
    let dual = ideal.alexander_dual()?;
    let connected = g.is_connected();
    let c = g.independence_number();
    let h = n - c;
    let covers = g.minimal_vertex_covers().len();

    let table = betti_table_with(&ideal, field, exec)?;
    let dual_table = betti_table_with(&dual, field, exec)?;
    let cm_check = cm_from_table(&ideal, &table);
    let dual_cm_check = cm_from_table(&dual, &dual_table);
    let linear_res_check = linear_from_table(&ideal, &table);
    let linear_res_dual_check = linear_from_table(&dual, &dual_table);

    let edge_count_check = CountCheck {
        observed: g.edge_count(),
        expected: binomial(h + 1, 2),
    };
    let cover_count_check = CountCheck {
        observed: covers,
        expected: h + 1,
    };
    let top = h.max(table.projective_dimension());
    let betti_check: Vec<BettiCheck> = (0..top)
        .map(|i| BettiCheck {
            i,
            observed: table.ideal_betti(i),
            expected: (i + 1) * binomial(h + 1, i + 2),
        })
        .collect();
    let betti_ok = betti_check.iter().all(|b| b.observed == b.expected);

    if cm_check != linear_res_dual_check || dual_cm_check != linear_res_check {
        return Err(Error::Inconsistent(format!(
            "Eagon-Reiner fails over {field} for {g:?}"
        )));
    }
    let conditions = [
        cm_check && dual_cm_check,
        cm_check && edge_count_check.holds(),
        cm_check && cover_count_check.holds(),
        betti_ok,
    ];
    if conditions.iter().any(|&x| x != conditions[0]) {
        return Err(Error::Inconsistent(format!(
            "bi-CM characterisations disagree ({conditions:?}) over {field} for {g:?}"
        )));
    }
    if conditions[0] && !connected {
        return Err(Error::Inconsistent(format!("disconnected graph certified bi-CM: {g:?}")));
    }
    Ok(BiCmCertificate {
        verdict: connected && conditions[0],
        field,
        n,
        connected,
        c,
        edge_count_check,
        cover_count_check,
        betti_check,
        cm_check,
        linear_res_dual_check,
        dual_cm_check,
        linear_res_check,
        conditions,
    })
}

/// Why a graph cannot be bi-CM, found without any homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    Disconnected,
    EdgeCount(CountCheck),
    CoverCount(CountCheck),
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::Disconnected => write!(f, "disconnected"),
            RejectReason::EdgeCount(c) => {
                write!(f, "edge count {} != {}", c.observed, c.expected)
            }
            RejectReason::CoverCount(c) => {
                write!(f, "cover count {} != {}", c.observed, c.expected)
            }
        }
    }
}

/// Necessary conditions only: `None` does not imply bi-CM.
pub fn quick_reject(g: &Graph) -> Option<RejectReason> {
    if !g.is_connected() {
        return Some(RejectReason::Disconnected);
    }
    let h = g.n() - g.independence_number();
    let edges = CountCheck {
        observed: g.edge_count(),
        expected: binomial(h + 1, 2),
    };
    if !edges.holds() {
        return Some(RejectReason::EdgeCount(edges));
    }
    let covers = CountCheck {
        observed: g.minimal_vertex_covers().len(),
        expected: h + 1,
    };
    if !covers.holds() {
        return Some(RejectReason::CoverCount(covers));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> Graph {
        Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (2, 4), (3, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(30, 15), 155117520);
    }

    #[test]
    fn worked_example_certificate() {
        let cert = certify_bicm(&worked_example(), FieldSpec::RATIONALS).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.c, 2);
        assert_eq!(cert.cover_count_check, CountCheck { observed: 4, expected: 4 });
        assert_eq!(cert.edge_count_check, CountCheck { observed: 6, expected: 6 });
        let obs: Vec<usize> = cert.betti_check.iter().map(|b| b.observed).collect();
        let exp: Vec<usize> = cert.betti_check.iter().map(|b| b.expected).collect();
        assert_eq!(obs, vec![6, 8, 3]);
        assert_eq!(exp, vec![6, 8, 3]);
    }

    #[test]
    fn triangle_and_square() {
        let tri = certify_bicm(&Graph::complete(3).unwrap(), FieldSpec::RATIONALS).unwrap();
        assert!(tri.verdict);
        assert_eq!(tri.cover_count_check.observed, 3);
        assert_eq!(tri.edge_count_check.observed, 3);

        let c4 = certify_bicm(&Graph::cycle(4).unwrap(), FieldSpec::RATIONALS).unwrap();
        assert!(!c4.verdict);
        assert_eq!(c4.edge_count_check, CountCheck { observed: 4, expected: 3 });
        assert_eq!(c4.cover_count_check, CountCheck { observed: 2, expected: 3 });
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        let cert = certify_bicm(&g, FieldSpec::RATIONALS).unwrap();
        assert!(!cert.verdict);
        assert!(!cert.connected);
        assert_eq!(quick_reject(&g), Some(RejectReason::Disconnected));
    }

    #[test]
    fn quick_reject_examples() {
        assert!(matches!(
            quick_reject(&Graph::cycle(4).unwrap()),
            Some(RejectReason::EdgeCount(_))
        ));
        assert_eq!(quick_reject(&Graph::path(4).unwrap()), None);
    }

    #[test]
    fn verdict_is_label_invariant() {
        let g = worked_example();
        let a = certify_bicm(&g, FieldSpec::RATIONALS).unwrap();
        let b = certify_bicm(&g.relabel(&[5, 3, 1, 4, 2]).unwrap(), FieldSpec::RATIONALS).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.betti_check, b.betti_check);
    }

    #[test]
    fn isolated_vertices_are_errors() {
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(
            certify_bicm(&g, FieldSpec::RATIONALS),
            Err(Error::IsolatedVertex(3))
        );
    }
}
