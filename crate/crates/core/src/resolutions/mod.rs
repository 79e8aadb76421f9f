//! Simplicial complexes, reduced homology over exact fields, graded Betti
//! numbers via Hochster's formula, and the Cohen-Macaulay and
//! linear-resolution predicates built on them.

mod betti;
mod rank;

pub(crate) use betti::{cm_from_table, linear_from_table};
pub use betti::{
    betti_table, betti_table_with, eagon_reiner_check, has_linear_resolution, is_cohen_macaulay,
    BettiJson, BettiTable, MAX_HOCHSTER_VARIABLES,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{bit, bits, low_mask, sort_canonical, Graph, VertexSet};
use crate::ideals::SquarefreeIdeal;

/// The coefficient field, identified by its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    /// `0` for the rationals, otherwise a prime below `2^31`.
    pub fn new(characteristic: u64) -> Result<Self> {
        let ok = characteristic == 0
            || (characteristic < (1 << 31) && is_prime(characteristic));
        if ok {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidField(characteristic))
        }
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    pub(crate) fn rank(self, rows: &[rank::SparseRow], ncols: usize) -> usize {
        match self.characteristic {
            0 => rank::sparse_rank_rational(rows, ncols),
            p => rank::sparse_rank_mod_p(rows, ncols, p),
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::RATIONALS
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;
    fn try_from(c: u64) -> Result<Self> {
        FieldSpec::new(c)
    }
}

impl From<FieldSpec> for u64 {
    fn from(k: FieldSpec) -> u64 {
        k.characteristic
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.characteristic {
            0 => write!(f, "QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A simplicial complex on `1..=n` given by its facets.
///
/// No facets at all is the void complex; the single empty facet is `{∅}`.
/// Vertices that lie in no facet are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal sets among `facets`.
    pub fn new(n: usize, facets: Vec<VertexSet>) -> Result<Self> {
        let all = low_mask(n);
        if let Some(f) = facets.iter().find(|f| f.mask() & !all != 0) {
            return Err(Error::InvalidArgument(format!("facet {f:?} outside 1..={n}")));
        }
        let mut masks: Vec<u64> = facets.iter().map(|f| f.mask()).collect();
        sort_canonical(&mut masks);
        masks.dedup();
        let mut keep: Vec<u64> = Vec::new();
        for &m in masks.iter().rev() {
            if !keep.iter().any(|&k| m & !k == 0) {
                keep.push(m);
            }
        }
        sort_canonical(&mut keep);
        Ok(SimplicialComplex {
            n,
            facets: keep.into_iter().map(VertexSet::from_mask).collect(),
        })
    }

    /// Faces are the independent sets of `g`.
    pub fn independence_complex(g: &Graph) -> Self {
        SimplicialComplex {
            n: g.n(),
            facets: g.maximal_independent_sets(),
        }
    }

    /// The complex whose Stanley-Reisner ideal is `ideal`: its facets are the
    /// complements of the minimal primes.
    pub fn stanley_reisner(ideal: &SquarefreeIdeal) -> Self {
        let n = ideal.universe().len();
        let all = low_mask(n);
        let mut facets: Vec<u64> = match ideal.alexander_dual() {
            Ok(dual) => dual.generators().iter().map(|&p| all & !p).collect(),
            Err(_) => vec![all],
        };
        sort_canonical(&mut facets);
        SimplicialComplex {
            n,
            facets: facets.into_iter().map(VertexSet::from_mask).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension; `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_face(&self, f: VertexSet) -> bool {
        self.facets.iter().any(|g| f.is_subset(*g))
    }

    /// Face counts by cardinality (`counts[k]` = faces with `k` vertices).
    pub fn face_counts(&self) -> Vec<usize> {
        let facets: Vec<u64> = self.facets.iter().map(|f| f.mask()).collect();
        enumerate_faces(self.vertex_support(), |f| facets.iter().any(|&g| f & !g == 0))
            .iter()
            .map(Vec::len)
            .collect()
    }

    fn vertex_support(&self) -> u64 {
        self.facets.iter().fold(0, |m, f| m | f.mask())
    }

    /// `dim_K H̃_i(Δ; K)` for `i = -1, 0, …, dim Δ` (entry `k` is `H̃_{k-1}`).
    /// The void complex has no homology and yields an empty list.
    pub fn reduced_homology_ranks(&self, field: FieldSpec) -> Vec<usize> {
        if self.facets.is_empty() {
            return Vec::new();
        }
        let facets: Vec<u64> = self.facets.iter().map(|f| f.mask()).collect();
        let faces = enumerate_faces(self.vertex_support(), |f| facets.iter().any(|&g| f & !g == 0));
        homology_from_faces(&faces, field)
    }

    /// Reduced Euler characteristic `Σ_k (-1)^{k-1} f_k` over faces with `k`
    /// vertices (the empty face counts in degree `-1`).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// All faces inside `vertices` for a downward-closed predicate, grouped by
/// cardinality. Index 0 holds the empty face.
pub(crate) fn enumerate_faces(vertices: u64, is_face: impl Fn(u64) -> bool) -> Vec<Vec<u64>> {
    let mut by_size: Vec<Vec<u64>> = vec![vec![0]];
    let mut stack = vec![0u64];
    while let Some(f) = stack.pop() {
        let above = if f == 0 { 0 } else { low_mask(64 - f.leading_zeros() as usize) };
        for v in bits(vertices & !above) {
            let g = f | bit(v);
            if is_face(g) {
                let k = g.count_ones() as usize;
                if by_size.len() <= k {
                    by_size.resize(k + 1, Vec::new());
                }
                by_size[k].push(g);
                stack.push(g);
            }
        }
    }
    by_size
}

/// Reduced homology ranks from faces grouped by cardinality.
pub(crate) fn homology_from_faces(faces: &[Vec<u64>], field: FieldSpec) -> Vec<usize> {
    // ranks[k] = rank of the boundary from k-vertex faces to (k-1)-vertex
    // faces; ranks[0] = 0 and ranks[len] = 0.
    let top = faces.len();
    let mut ranks = vec![0usize; top + 1];
    for k in 1..top {
        let lower: HashMap<u64, usize> =
            faces[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows: Vec<rank::SparseRow> = faces[k]
            .iter()
            .map(|&f| {
                let mut row: rank::SparseRow = bits(f)
                    .enumerate()
                    .map(|(t, v)| (lower[&(f & !bit(v))], if t % 2 == 0 { 1 } else { -1 }))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        ranks[k] = field.rank(&rows, lower.len());
    }
    (0..top)
        .map(|k| faces[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| VertexSet::from_vertices(f)).collect())
            .unwrap()
    }

    #[test]
    fn field_validation() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(101).is_ok());
        assert_eq!(FieldSpec::new(4), Err(Error::InvalidField(4)));
        assert_eq!(FieldSpec::new(1), Err(Error::InvalidField(1)));
    }

    #[test]
    fn homology_of_small_complexes() {
        let q = FieldSpec::RATIONALS;
        assert_eq!(cx(3, &[&[1, 2], &[1, 3], &[2, 3]]).reduced_homology_ranks(q), vec![0, 0, 1]);
        assert_eq!(cx(3, &[&[1, 2, 3]]).reduced_homology_ranks(q), vec![0, 0, 0, 0]);
        assert_eq!(cx(2, &[&[1], &[2]]).reduced_homology_ranks(q), vec![0, 1]);
    }

    #[test]
    fn empty_versus_void() {
        let q = FieldSpec::RATIONALS;
        let void = SimplicialComplex::new(3, vec![]).unwrap();
        assert_eq!(void.dim(), None);
        assert!(void.reduced_homology_ranks(q).is_empty());
        let empty = SimplicialComplex::new(3, vec![VertexSet::from_mask(0)]).unwrap();
        assert_eq!(empty.dim(), Some(-1));
        assert_eq!(empty.reduced_homology_ranks(q), vec![1]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // Six-vertex triangulation of RP^2: H̃_1 = Z/2, so ranks differ
        // between characteristic 0 and 2.
        let rp2 = cx(
            6,
            &[
                &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
                &[2, 3, 5], &[3, 4, 6], &[2, 4, 5], &[2, 4, 6], &[3, 5, 6],
            ],
        );
        let q = rp2.reduced_homology_ranks(FieldSpec::RATIONALS);
        let f2 = rp2.reduced_homology_ranks(FieldSpec::new(2).unwrap());
        assert_eq!(q, vec![0, 0, 0, 0]);
        assert_eq!(f2, vec![0, 0, 1, 1]);
        assert_eq!(rp2.reduced_euler_characteristic(), 0);
    }

    #[test]
    fn independence_complexes() {
        let tri = SimplicialComplex::independence_complex(&Graph::complete(3).unwrap());
        assert_eq!(tri.facets().len(), 3);
        assert!(tri.facets().iter().all(|f| f.len() == 1));
        let p4 = SimplicialComplex::independence_complex(&Graph::path(4).unwrap());
        let want = cx(4, &[&[1, 3], &[1, 4], &[2, 4]]);
        assert_eq!(p4, want);
        let worked_example =
            Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (2, 4), (3, 4), (4, 5)]).unwrap();
        let c = SimplicialComplex::independence_complex(&worked_example);
        assert_eq!(c, cx(5, &[&[1, 5], &[1, 4], &[2, 5], &[3, 5]]));
        let sr = SimplicialComplex::stanley_reisner(&SquarefreeIdeal::edge_ideal(&worked_example).unwrap());
        assert_eq!(sr, c);
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let k = rng.gen_range(1..=5);
            let facets: Vec<VertexSet> = (0..k)
                .map(|_| VertexSet::from_mask(rng.gen_range(0..=low_mask(n))))
                .collect();
            let c = SimplicialComplex::new(n, facets).unwrap();
            for field in [FieldSpec::RATIONALS, FieldSpec::new(2).unwrap()] {
                let h = c.reduced_homology_ranks(field);
                let alt: i64 = h
                    .iter()
                    .enumerate()
                    .map(|(k, &r)| if k % 2 == 1 { r as i64 } else { -(r as i64) })
                    .sum();
                assert_eq!(alt, c.reduced_euler_characteristic(), "{c:?}");
            }
        }
    }
}
