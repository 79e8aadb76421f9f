//! Recognizers and constructors for bipartite and chordal bi-CM graphs.
//!
//! A bipartite graph is bi-CM iff it is a staircase: sides `v_1..v_k` and
//! `w_1..w_k` with `{v_i, w_j}` an edge exactly when `i ≤ j`. A chordal
//! graph is bi-CM iff the facets of its clique complex that contain a free
//! vertex partition the vertex set, each holds exactly one free vertex, and
//! the remaining vertices (the center) form a clique.

use serde::{Deserialize, Serialize};

use crate::bicm::{certify_bicm, BiCmCertificate};
use crate::error::{Error, Result};
use crate::graphs::{bit, bits, Graph, VertexSet};
use crate::resolutions::FieldSpec;

/// Orderings of the two sides that realize the staircase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteWitness {
    pub v_order: Vec<usize>,
    pub w_order: Vec<usize>,
}

/// Facets with a free vertex, their free vertices (same order) and the
/// center. A complete graph is reported with one facet whose free vertex is
/// its largest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalWitness {
    pub facets: Vec<Vec<usize>>,
    pub free_vertices: Vec<usize>,
    pub center: Vec<usize>,
}

fn is_staircase(g: &Graph, v: &[usize], w: &[usize]) -> bool {
    let k = v.len();
    if w.len() != k || g.edge_count() != k * (k + 1) / 2 {
        return false;
    }
    (0..k).all(|i| (0..k).all(|j| g.has_edge(v[i], w[j]) == (i <= j)))
}

/// A staircase witness, or `None` when `G` is bipartite but not a
/// staircase (including disconnected graphs).
pub fn recognize_bipartite_bicm(g: &Graph) -> Result<Option<BipartiteWitness>> {
    let (a, b) = g.is_bipartite().ok_or(Error::NotBipartite)?;
    if !g.is_connected() || g.n() < 2 {
        return Ok(None);
    }
    for (side_v, side_w) in [(a, b), (b, a)] {
        let mut v = side_v.vertices();
        let mut w = side_w.vertices();
        v.sort_by_key(|&x| (std::cmp::Reverse(g.degree(x)), x));
        w.sort_by_key(|&x| (g.degree(x), x));
        if is_staircase(g, &v, &w) {
            return Ok(Some(BipartiteWitness {
                v_order: v,
                w_order: w,
            }));
        }
    }
    Ok(None)
}

/// The staircase on `2k` vertices: `v_i = i`, `w_j = k + j`.
pub fn build_bipartite_bicm(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidArgument("staircase needs k ≥ 1".into()));
    }
    let edges: Vec<_> = (1..=k)
        .flat_map(|i| (i..=k).map(move |j| (i, k + j)))
        .collect();
    Graph::from_edges(2 * k, &edges)
}

/// Vertices lying in exactly one facet of the clique complex.
pub fn free_vertices(g: &Graph) -> VertexSet {
    let facets = g.clique_complex_facets();
    let mut once = 0u64;
    let mut more = 0u64;
    for f in &facets {
        more |= once & f.mask();
        once |= f.mask();
    }
    VertexSet::from_mask(once & !more)
}

/// A chordal witness, or `None` when the chordal graph `G` fails the
/// conditions (including disconnected graphs).
pub fn recognize_chordal_bicm(g: &Graph) -> Result<Option<ChordalWitness>> {
    if g.is_chordal().is_none() {
        return Err(Error::NotChordal);
    }
    if g.n() < 2 || !g.is_connected() {
        return Ok(None);
    }
    let facets = g.clique_complex_facets();
    if facets.len() == 1 {
        let all = facets[0].vertices();
        let j = *all.last().unwrap();
        return Ok(Some(ChordalWitness {
            facets: vec![all.clone()],
            free_vertices: vec![j],
            center: all[..all.len() - 1].to_vec(),
        }));
    }
    let free = free_vertices(g).mask();
    let mut covered = 0u64;
    let mut wf = Vec::new();
    let mut wj = Vec::new();
    for f in facets.iter().filter(|f| f.mask() & free != 0) {
        let own = f.mask() & free;
        if own.count_ones() != 1 || covered & f.mask() != 0 {
            return Ok(None);
        }
        covered |= f.mask();
        wf.push(f.vertices());
        wj.push(own.trailing_zeros() as usize + 1);
    }
    if covered != g.vertex_mask() {
        return Ok(None);
    }
    let center = g.vertex_mask() & !free;
    if bits(center).any(|v| g.adjacency()[v] & center != center & !bit(v)) {
        return Ok(None);
    }
    Ok(Some(ChordalWitness {
        facets: wf,
        free_vertices: wj,
        center: VertexSet::from_mask(center).vertices(),
    }))
}

/// Builds a chordal bi-CM graph. For `m ≥ 2` facets the center is
/// `K_{center_size}` on `1..=center_size`, cut into consecutive blocks of
/// sizes `facet_size - 1`; facet `i` adds the free vertex
/// `center_size + i` joined to its block. A single facet of size `n`
/// gives `K_n` (then `center_size` must be `0` or `n - 1`).
pub fn build_chordal_bicm(center_size: usize, facet_sizes: &[usize]) -> Result<Graph> {
    match facet_sizes {
        [] => Err(Error::InvalidArgument("at least one facet is needed".into())),
        &[n] => {
            if n < 2 || (center_size != 0 && center_size + 1 != n) {
                return Err(Error::InvalidArgument(format!(
                    "single facet of size {n} does not fit center size {center_size}"
                )));
            }
            Graph::complete(n)
        }
        sizes => {
            if sizes.iter().any(|&s| s < 2) {
                return Err(Error::InvalidArgument("facet sizes must be at least 2".into()));
            }
            let total: usize = sizes.iter().map(|s| s - 1).sum();
            if total != center_size {
                return Err(Error::InvalidArgument(format!(
                    "facet sizes give a center of {total} vertices, not {center_size}"
                )));
            }
            let mut edges = Vec::new();
            for a in 1..=center_size {
                for b in a + 1..=center_size {
                    edges.push((a, b));
                }
            }
            let mut next = 1;
            for (i, &s) in sizes.iter().enumerate() {
                for c in next..next + s - 1 {
                    edges.push((c, center_size + i + 1));
                }
                next += s - 1;
            }
            Graph::from_edges(center_size + sizes.len(), &edges)
        }
    }
}

fn validate_witness(g: &Graph, w: &ChordalWitness) -> Result<()> {
    let bad = |msg: &str| Err(Error::InvalidWitness(msg.to_string()));
    if w.facets.is_empty() || w.facets.len() != w.free_vertices.len() {
        return bad("one free vertex per facet is required");
    }
    let mut covered = 0u64;
    let mut free = 0u64;
    for (f, &j) in w.facets.iter().zip(&w.free_vertices) {
        for &v in f.iter().chain([j].iter()) {
            g.check_vertex(v)?;
        }
        let mask = VertexSet::from_vertices(f).mask();
        if covered & mask != 0 {
            return bad("facets overlap");
        }
        if mask & bit(j - 1) == 0 {
            return bad("free vertex outside its facet");
        }
        covered |= mask;
        free |= bit(j - 1);
    }
    if covered != g.vertex_mask() {
        return bad("facets do not cover the vertex set");
    }
    if VertexSet::from_vertices(&w.center).mask() != g.vertex_mask() & !free {
        return bad("center is not the complement of the free vertices");
    }
    Ok(())
}

/// Builds `J = (P_1^2, …, P_m^2, I_{G'})` in the center variables, with
/// `P_i` the non-free part of `F_i` and `G'` the edges in no listed facet,
/// and compares it with the square of the maximal ideal.
pub fn reduction_ideal_check(g: &Graph, w: &ChordalWitness) -> Result<bool> {
    validate_witness(g, w)?;
    let center = VertexSet::from_vertices(&w.center).mask();
    let facet_masks: Vec<u64> = w.facets.iter().map(|f| VertexSet::from_vertices(f).mask()).collect();
    // Degree-2 monomials as (a, b) with a ≤ b.
    let mut j = std::collections::BTreeSet::new();
    for (&f, &free) in facet_masks.iter().zip(&w.free_vertices) {
        let p = f & !bit(free - 1);
        for a in bits(p) {
            for b in bits(p).filter(|&b| b >= a) {
                j.insert((a, b));
            }
        }
    }
    for m in g.edge_masks() {
        if facet_masks.iter().all(|&f| m & f != m) {
            if m & center != m {
                return Ok(false);
            }
            let a = m.trailing_zeros() as usize;
            let b = 63 - m.leading_zeros() as usize;
            j.insert((a, b));
        }
    }
    let square: std::collections::BTreeSet<(usize, usize)> = bits(center)
        .flat_map(|a| bits(center).filter(move |&b| b >= a).map(move |b| (a, b)))
        .collect();
    Ok(j == square)
}

/// Family recognition plus the certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub bipartite: bool,
    pub chordal: bool,
    pub bipartite_witness: Option<BipartiteWitness>,
    pub chordal_witness: Option<ChordalWitness>,
    pub reduction_ideal_check: Option<bool>,
    pub certificate: BiCmCertificate,
}

pub fn classify(g: &Graph, field: FieldSpec) -> Result<ClassifyReport> {
    let bipartite = g.is_bipartite().is_some();
    let chordal = g.is_chordal().is_some();
    let bipartite_witness = if bipartite { recognize_bipartite_bicm(g)? } else { None };
    let chordal_witness = if chordal { recognize_chordal_bicm(g)? } else { None };
    let reduction_ideal_check = match &chordal_witness {
        Some(w) => Some(reduction_ideal_check(g, w)?),
        None => None,
    };
    Ok(ClassifyReport {
        bipartite,
        chordal,
        bipartite_witness,
        chordal_witness,
        reduction_ideal_check,
        certificate: certify_bicm(g, field)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: free vertices by counting facet memberships directly.
    fn free_oracle(g: &Graph) -> Vec<usize> {
        let facets = g.clique_complex_facets();
        (1..=g.n())
            .filter(|&v| facets.iter().filter(|f| f.contains(v)).count() == 1)
            .collect()
    }

    #[test]
    fn staircases() {
        let staircase = build_bipartite_bicm(4).unwrap();
        assert_eq!(staircase.edge_count(), 10);
        let w = recognize_bipartite_bicm(&staircase).unwrap().unwrap();
        assert_eq!(w.v_order, [1, 2, 3, 4]);
        assert_eq!(w.w_order, [5, 6, 7, 8]);

        let one = build_bipartite_bicm(1).unwrap();
        assert!(recognize_bipartite_bicm(&one).unwrap().is_some());

        let p4 = build_bipartite_bicm(2).unwrap();
        assert!(crate::graphs::are_isomorphic(&p4, &Graph::path(4).unwrap()).unwrap().is_some());

        assert!(recognize_bipartite_bicm(&Graph::cycle(8).unwrap()).unwrap().is_none());
        assert_eq!(recognize_bipartite_bicm(&Graph::complete(3).unwrap()), Err(Error::NotBipartite));

        // Relabelled staircase is still recognized.
        let perm = [5, 3, 8, 1, 2, 7, 4, 6];
        let shuffled = staircase.relabel(&perm).unwrap();
        let w = recognize_bipartite_bicm(&shuffled).unwrap().unwrap();
        assert!(is_staircase(&shuffled, &w.v_order, &w.w_order));
    }

    #[test]
    fn free_vertices_match_oracle() {
        for g in [
            Graph::path(4).unwrap(),
            Graph::complete(4).unwrap(),
            build_chordal_bicm(4, &[3, 2, 2]).unwrap(),
            Graph::from_edges(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap(),
        ] {
            assert_eq!(free_vertices(&g).vertices(), free_oracle(&g));
        }
    }

    #[test]
    fn chordal_examples() {
        let k5 = Graph::complete(5).unwrap();
        let w = recognize_chordal_bicm(&k5).unwrap().unwrap();
        assert_eq!(w.facets.len(), 1);
        assert!(reduction_ideal_check(&k5, &w).unwrap());

        let p4 = Graph::path(4).unwrap();
        let w = recognize_chordal_bicm(&p4).unwrap().unwrap();
        assert_eq!(w.facets, [vec![1, 2], vec![3, 4]]);
        assert_eq!(w.free_vertices, [1, 4]);
        assert_eq!(w.center, [2, 3]);
        assert!(reduction_ideal_check(&p4, &w).unwrap());

        let k4p = build_chordal_bicm(4, &[2, 2, 2, 2]).unwrap();
        assert_eq!(k4p.edge_count(), 10);
        let w = recognize_chordal_bicm(&k4p).unwrap().unwrap();
        assert_eq!(w.center, [1, 2, 3, 4]);
        assert!(reduction_ideal_check(&k4p, &w).unwrap());

        assert_eq!(recognize_chordal_bicm(&Graph::cycle(4).unwrap()), Err(Error::NotChordal));
    }

    #[test]
    fn builder_round_trip_and_errors() {
        assert_eq!(build_chordal_bicm(2, &[2, 2]).unwrap(), Graph::from_edges(4, &[(1, 2), (1, 3), (2, 4)]).unwrap());
        assert_eq!(build_chordal_bicm(0, &[5]).unwrap(), Graph::complete(5).unwrap());
        assert!(build_chordal_bicm(3, &[2, 2]).is_err());
        assert!(build_chordal_bicm(1, &[1, 2]).is_err());
        for (c, sizes) in [(3, vec![2, 3]), (5, vec![3, 2, 3]), (3, vec![2, 2, 2])] {
            let g = build_chordal_bicm(c, &sizes).unwrap();
            let w = recognize_chordal_bicm(&g).unwrap().unwrap();
            let mut got: Vec<usize> = w.facets.iter().map(|f| f.len()).collect();
            let mut want = sizes.clone();
            got.sort();
            want.sort();
            assert_eq!(got, want);
            assert_eq!(w.center.len(), c);
        }
    }

    #[test]
    fn reduction_check_detects_missing_center_edge() {
        // P4 witness over a graph whose cross-facet center edge is missing.
        let g = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        let w = ChordalWitness {
            facets: vec![vec![1, 2], vec![3, 4]],
            free_vertices: vec![1, 4],
            center: vec![2, 3],
        };
        assert!(!reduction_ideal_check(&g, &w).unwrap());
        let broken = ChordalWitness {
            free_vertices: vec![1, 1],
            ..w
        };
        assert!(matches!(reduction_ideal_check(&g, &broken), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn classify_report() {
        let r = classify(&Graph::path(4).unwrap(), FieldSpec::RATIONALS).unwrap();
        assert!(r.bipartite && r.chordal);
        assert!(r.bipartite_witness.is_some() && r.chordal_witness.is_some());
        assert_eq!(r.reduction_ideal_check, Some(true));
        assert!(r.certificate.verdict);
    }
}
