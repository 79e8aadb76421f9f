//! Canonical labelling and isomorphism for small graphs.
//!
//! Both routines use colour refinement: a vertex colouring is refined until
//! every vertex in a colour class sees the same number of neighbours in each
//! class. Canonical forms then branch over individualisations of the first
//! non-trivial class and keep the lexicographically smallest adjacency
//! string; isomorphism search runs the same refinement on the disjoint union
//! of the two graphs, so colours are comparable across them.

use super::{bit, bits, Graph};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`canonical_form`] and [`are_isomorphic`].
pub const MAX_ISO_VERTICES: usize = 12;

/// Canonical form of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Upper-triangle adjacency string of the canonically relabelled graph,
    /// pair `(0,1)` in the most significant position.
    pub code: u128,
    /// `labeling[v - 1]` is the canonical label (1-based) of vertex `v`.
    pub labeling: Vec<usize>,
    pub graph: Graph,
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_ISO_VERTICES {
        Err(Error::SizeGuard {
            what: "vertex count for isomorphism",
            got: n,
            limit: MAX_ISO_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Refines `colors` (values `0..k`) to the coarsest equitable colouring
/// below it. Class order is decided by `(old colour, neighbour colour
/// counts)`, so the result does not depend on vertex labels.
fn refine(adj: &[u64], colors: &mut [u32]) {
    let n = adj.len();
    let mut k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut counts = vec![0u32; k];
                for u in bits(adj[v]) {
                    counts[colors[u] as usize] += 1;
                }
                (colors[v], counts, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0u32;
        for w in 0..n {
            if w > 0 && (sigs[w].0 != sigs[w - 1].0 || sigs[w].1 != sigs[w - 1].1) {
                next += 1;
            }
            colors[sigs[w].2] = next;
        }
        let new_k = if n == 0 { 0 } else { next as usize + 1 };
        if new_k == k {
            return;
        }
        k = new_k;
    }
}

/// Splits vertex `v` off its class `c` (it keeps `c`, the rest move up).
fn individualize(colors: &[u32], targets: &[usize]) -> Vec<u32> {
    let c = colors[targets[0]];
    colors
        .iter()
        .enumerate()
        .map(|(w, &x)| {
            if x > c || (x == c && !targets.contains(&w)) {
                x + 1
            } else {
                x
            }
        })
        .collect()
}

fn code_of(adj: &[u64], position: &[u32]) -> u128 {
    let n = adj.len();
    let mut at = vec![0usize; n];
    for (v, &p) in position.iter().enumerate() {
        at[p as usize] = v;
    }
    let mut code = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            code = (code << 1) | u128::from(adj[at[i]] & bit(at[j]) != 0);
        }
    }
    code
}

fn first_nontrivial_class(colors: &[u32]) -> Option<u32> {
    let mut counts = vec![0usize; colors.len()];
    for &c in colors {
        counts[c as usize] += 1;
    }
    counts.iter().position(|&k| k > 1).map(|c| c as u32)
}

fn canon_search(adj: &[u64], mut colors: Vec<u32>, best: &mut Option<(u128, Vec<u32>)>) {
    refine(adj, &mut colors);
    match first_nontrivial_class(&colors) {
        None => {
            let code = code_of(adj, &colors);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, colors));
            }
        }
        Some(c) => {
            for v in (0..adj.len()).filter(|&v| colors[v] == c) {
                canon_search(adj, individualize(&colors, &[v]), best);
            }
        }
    }
}

/// Computes the canonical form of `g` (`n ≤ 12`).
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    guard(g.n())?;
    let adj = g.adjacency();
    let mut best = None;
    canon_search(adj, vec![0; adj.len()], &mut best);
    let (code, colors) = best.unwrap_or((0, Vec::new()));
    let labeling: Vec<usize> = colors.iter().map(|&c| c as usize + 1).collect();
    let graph = g.relabel(&labeling)?;
    Ok(CanonicalForm {
        code,
        labeling,
        graph,
    })
}

/// Finds a bijection `f` with `f[v - 1]` the image of vertex `v`, such that
/// `{i, j} ∈ E(g) ⇔ {f(i), f(j)} ∈ E(h)`; `None` when the graphs are not
/// isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    guard(g.n())?;
    guard(h.n())?;
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let union: Vec<u64> = g
        .adjacency()
        .iter()
        .copied()
        .chain(h.adjacency().iter().map(|&m| m << n))
        .collect();
    Ok(match_search(&union, n, vec![0; 2 * n])
        .map(|f| f.into_iter().map(|x| x + 1).collect()))
}

fn match_search(union: &[u64], n: usize, mut colors: Vec<u32>) -> Option<Vec<usize>> {
    refine(union, &mut colors);
    let mut balance = vec![0i64; 2 * n];
    for (v, &c) in colors.iter().enumerate() {
        balance[c as usize] += if v < n { 1 } else { -1 };
    }
    if balance.iter().any(|&b| b != 0) {
        return None;
    }
    let left = &colors[..n];
    match first_nontrivial_class(left) {
        None => {
            let f: Vec<usize> = (0..n)
                .map(|v| (n..2 * n).find(|&w| colors[w] == colors[v]).unwrap() - n)
                .collect();
            let ok = (0..n).all(|v| {
                bits(union[v]).all(|u| union[f[v] + n] & bit(f[u] + n) != 0)
            });
            ok.then_some(f)
        }
        Some(c) => {
            let v = (0..n).find(|&v| colors[v] == c).unwrap();
            (n..2 * n)
                .filter(|&w| colors[w] == c)
                .find_map(|w| match_search(union, n, individualize(&colors, &[v, w])))
        }
    }
}
