//! Isomorphism classes of small connected graphs and of trees.
//!
//! Every connected graph on `n` vertices has a vertex whose removal leaves
//! it connected, so the classes on `n` vertices are obtained from those on
//! `n - 1` by adding a vertex joined to a nonempty subset and keeping one
//! graph per canonical form. Trees grow the same way by adding leaves.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graphs::{bit, canonical_form, low_mask, Graph, Tree};
use crate::par::{map_collect, Execution};

/// Largest vertex count accepted by the enumerators.
pub const MAX_ENUM_VERTICES: usize = 9;

fn guard(n: usize) -> Result<()> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::SizeGuard {
            what: "vertex count for enumeration",
            got: n,
            limit: MAX_ENUM_VERTICES,
        });
    }
    Ok(())
}

fn extend(g: &Graph, neighbors: u64) -> Graph {
    let n = g.n();
    let mut adj: Vec<u64> = g
        .adjacency()
        .iter()
        .enumerate()
        .map(|(v, &m)| if neighbors & bit(v) != 0 { m | bit(n) } else { m })
        .collect();
    adj.push(neighbors);
    Graph::from_adjacency(adj)
}

/// Keeps one canonical representative per code, ordered by code.
fn dedup(batches: Vec<Result<Vec<(u128, Graph)>>>) -> Result<Vec<Graph>> {
    let mut classes = BTreeMap::new();
    for batch in batches {
        for (code, g) in batch? {
            classes.entry(code).or_insert(g);
        }
    }
    Ok(classes.into_values().collect())
}

fn grow(parents: Vec<Graph>, exec: Execution, subsets: impl Fn(&Graph) -> Vec<u64> + Sync + Send) -> Result<Vec<Graph>> {
    let batches = map_collect(exec, parents, |g| {
        subsets(&g)
            .into_iter()
            .map(|s| {
                let cf = canonical_form(&extend(&g, s))?;
                Ok((cf.code, cf.graph))
            })
            .collect::<Result<Vec<_>>>()
    });
    dedup(batches)
}

/// Canonical representatives of the connected graphs on `1..=n_max`
/// vertices; entry `n - 1` lists the classes on `n` vertices in canonical
/// code order.
pub fn connected_classes_up_to(n_max: usize, exec: Execution) -> Result<Vec<Vec<Graph>>> {
    guard(n_max)?;
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let mut out = vec![vec![Graph::empty(1)?]];
    for _ in 2..=n_max {
        let parents = out.last().unwrap().clone();
        let next = grow(parents, exec, |g| (1..=low_mask(g.n())).collect())?;
        out.push(next);
    }
    Ok(out)
}

/// Canonical representatives of the connected graphs on `n` vertices.
pub fn connected_classes(n: usize, exec: Execution) -> Result<Vec<Graph>> {
    Ok(connected_classes_up_to(n, exec)?.pop().unwrap_or_default())
}

/// Canonical representatives of the trees on `m` vertices.
pub fn tree_classes(m: usize) -> Result<Vec<Tree>> {
    guard(m)?;
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)?];
    for _ in 2..=m {
        level = grow(level, Execution::Sequential, |g| (0..g.n()).map(bit).collect())?;
    }
    level.into_iter().map(Tree::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: labelled enumeration with canonical codes taken as the minimum
    // adjacency string over all n! permutations.
    fn brute_force_connected_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &(i, j))| (i + 1, j + 1))
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            let code = perms
                .iter()
                .map(|p| {
                    let mut c = 0u64;
                    for &(i, j) in &pairs {
                        c = (c << 1) | g.has_edge(p[i] + 1, p[j] + 1) as u64;
                    }
                    c
                })
                .min()
                .unwrap();
            seen.insert(code);
        }
        seen.len()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn connected_counts_match_brute_force() {
        let levels = connected_classes_up_to(5, Execution::Sequential).unwrap();
        for n in 1..=5 {
            assert_eq!(levels[n - 1].len(), brute_force_connected_count(n), "n = {n}");
        }
    }

    #[test]
    fn connected_counts_known_values() {
        let par = connected_classes_up_to(7, Execution::Parallel).unwrap();
        let counts: Vec<usize> = par.iter().map(|l| l.len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
        let seq = connected_classes(6, Execution::Sequential).unwrap();
        assert_eq!(seq, par[5]);
        assert!(par.iter().flatten().all(|g| g.is_connected()));
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|m| tree_classes(m).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23]);
        assert!(tree_classes(MAX_ENUM_VERTICES + 1).is_err());
    }
}
