//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's homology, cover or separation code.
#![allow(dead_code, clippy::needless_range_loop)]

use bicm_core::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn worked_example() -> Graph {
    Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (2, 4), (3, 4), (4, 5)]).unwrap()
}

pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    (1..=g.n())
        .flat_map(|i| (i + 1..=g.n()).map(move |j| (i, j)))
        .filter(|&(i, j)| g.has_edge(i, j))
        .collect()
}

fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

/// Minimal vertex covers by checking every subset.
pub fn covers_oracle(g: &Graph) -> Vec<u64> {
    let edges = edge_list(g);
    let is_cover =
        |c: u64| edges.iter().all(|&(i, j)| c & (1 << (i - 1)) != 0 || c & (1 << (j - 1)) != 0);
    let mut out: Vec<u64> = subsets(g.n())
        .filter(|&c| is_cover(c))
        .filter(|&c| (0..g.n()).all(|v| c & (1 << v) == 0 || !is_cover(c & !(1 << v))))
        .collect();
    out.sort_by_key(|&c| (c.count_ones(), c));
    out
}

fn independent(g: &Graph, s: u64) -> bool {
    edge_list(g)
        .iter()
        .all(|&(i, j)| !(s & (1 << (i - 1)) != 0 && s & (1 << (j - 1)) != 0))
}

/// Rank over `Q` by Gaussian elimination on big rationals.
pub fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let d = &f * &m[rank][j];
                m[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced homology ranks over `Q` of the independence complex of `g`
/// restricted to `w`; index `k` holds `H̃_{k-1}`.
pub fn restricted_homology(g: &Graph, w: u64) -> Vec<usize> {
    let faces: Vec<u64> = subsets(g.n())
        .filter(|&f| f & !w == 0 && independent(g, f))
        .collect();
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let by_size: Vec<Vec<u64>> = (0..=top)
        .map(|k| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect())
        .collect();
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let lower = &by_size[k - 1];
        let mat: Vec<Vec<BigRational>> = by_size[k]
            .iter()
            .map(|&f| {
                lower
                    .iter()
                    .map(|&l| {
                        if l & !f != 0 {
                            return BigRational::zero();
                        }
                        let removed = (f & !l).trailing_zeros();
                        let pos = (f & ((1u64 << removed) - 1)).count_ones();
                        let s = if pos.is_multiple_of(2) { 1 } else { -1 };
                        BigRational::from_integer(BigInt::from(s))
                    })
                    .collect()
            })
            .collect();
        ranks[k] = if mat.is_empty() { 0 } else { rational_rank(mat) };
    }
    (0..=top).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// `β_i(I_G)` over `Q` for `i = 0, 1, ...` from Hochster's formula over
/// every vertex subset.
pub fn hochster_ideal_betti(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut total = vec![0usize; n + 2];
    for w in subsets(n) {
        let size = w.count_ones() as usize;
        for (k, r) in restricted_homology(g, w).into_iter().enumerate() {
            // H̃_{k-1}(Δ_W) contributes to β_{|W|-k}(S/I).
            if r > 0 && size >= k {
                total[size - k] += r;
            }
        }
    }
    // β_i(I) = β_{i+1}(S/I).
    let mut out: Vec<usize> = total[1..].to_vec();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// A separation of `g` found by brute force over all splits of every
/// vertex, using the cover oracle for the non-zerodivisor condition.
pub fn separable_oracle(g: &Graph) -> bool {
    let n = g.n();
    let edges = edge_list(g);
    for i in 1..=n {
        let nb: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect();
        for mask in 1..(1u32 << nb.len()) - 1 {
            let moved: Vec<usize> =
                (0..nb.len()).filter(|k| mask & (1 << k) != 0).map(|k| nb[k]).collect();
            let split: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| {
                    if a == i && moved.contains(&b) {
                        (b, n + 1)
                    } else if b == i && moved.contains(&a) {
                        (a, n + 1)
                    } else {
                        (a, b)
                    }
                })
                .collect();
            let h = Graph::from_edges(n + 1, &split).unwrap();
            let both = (1u64 << (i - 1)) | (1u64 << n);
            if covers_oracle(&h).iter().all(|&c| c & both != both) {
                return true;
            }
        }
    }
    false
}

/// A random graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// A random graph without isolated vertices.
pub fn random_graph_no_isolated(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.25..0.85);
        let g = random_graph(rng, n, p);
        if (1..=g.n()).all(|v| g.degree(v) > 0) {
            return g;
        }
    }
}
