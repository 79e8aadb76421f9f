use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{enumerate_faces, homology_from_faces, FieldSpec};
use crate::error::{Error, Result};
use crate::graphs::low_mask;
use crate::ideals::SquarefreeIdeal;
use crate::par::{map_collect, Execution};

/// Largest number of variables for which Hochster's formula is evaluated.
pub const MAX_HOCHSTER_VARIABLES: usize = 20;

/// Graded Betti numbers `β_{i,j}(S/I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

/// `{"n": int, "entries": [[i, j, rank], ...]}` for `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub n: usize,
    pub entries: Vec<[usize; 3]>,
}

impl BettiTable {
    /// Number of variables of the ambient ring.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `β_{i,j}(S/I)`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, j), β_{i,j})`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// `β_i(S/I) = Σ_j β_{i,j}(S/I)`.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .range((i, 0)..=(i, usize::MAX))
            .map(|(_, &v)| v)
            .sum()
    }

    /// `β_i(I) = β_{i+1}(S/I)`.
    pub fn ideal_betti(&self, i: usize) -> usize {
        self.total(i + 1)
    }

    /// `β_{i,j}(I) = β_{i+1,j}(S/I)`.
    pub fn ideal_graded(&self, i: usize, j: usize) -> usize {
        self.get(i + 1, j)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn depth(&self) -> usize {
        self.n - self.projective_dimension()
    }

    /// Castelnuovo-Mumford regularity of `S/I`.
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            n: self.n,
            entries: self.entries.iter().map(|(&(i, j), &v)| [i, j, v]).collect(),
        }
    }

    /// Macaulay2-style table: columns are homological degrees `i`, rows are
    /// `j - i`.
    pub fn pretty(&self) -> String {
        let pd = self.projective_dimension();
        let reg = self.regularity();
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut cols: Vec<Vec<String>> = Vec::new();
        for i in 0..=pd {
            let mut col = vec![i.to_string(), self.total(i).to_string()];
            for r in 0..=reg {
                col.push(cell(self.get(i, i + r)));
            }
            cols.push(col);
        }
        let widths: Vec<usize> = cols
            .iter()
            .map(|c| c.iter().map(String::len).max().unwrap_or(1))
            .collect();
        let mut labels = vec![String::new(), "total:".to_string()];
        labels.extend((0..=reg).map(|r| format!("{r}:")));
        let lw = labels.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (row, label) in labels.iter().enumerate() {
            out.push_str(&format!("{label:>lw$}"));
            for (c, w) in cols.iter().zip(&widths) {
                out.push_str(&format!(" {:>w$}", c[row], w = *w));
            }
            out.push('\n');
        }
        out
    }
}

/// Betti table of `S/I` over `field` with the default execution mode.
pub fn betti_table(ideal: &SquarefreeIdeal, field: FieldSpec) -> Result<BettiTable> {
    betti_table_with(ideal, field, Execution::default())
}

/// Hochster's formula: `β_{i,W}(S/I) = dim H̃_{|W|-i-1}(Δ_W)`, summed over
/// `|W| = j`.
///
/// Only subsets `W` that are unions of generators contribute: otherwise
/// some vertex of `W` lies in no minimal nonface of `Δ_W`, which makes
/// `Δ_W` a cone.
pub fn betti_table_with(
    ideal: &SquarefreeIdeal,
    field: FieldSpec,
    exec: Execution,
) -> Result<BettiTable> {
    let n = ideal.universe().len();
    if n > MAX_HOCHSTER_VARIABLES {
        return Err(Error::SizeGuard {
            what: "variable count for Hochster's formula",
            got: n,
            limit: MAX_HOCHSTER_VARIABLES,
        });
    }
    let gens = ideal.generators();
    let candidates: Vec<u64> = (0..=low_mask(n))
        .filter(|&w| gens.iter().filter(|&&g| g & !w == 0).fold(0, |m, &g| m | g) == w)
        .collect();
    let contributions = map_collect(exec, candidates, |w| {
        let inside: Vec<u64> = gens.iter().copied().filter(|&g| g & !w == 0).collect();
        let faces = enumerate_faces(w, |f| inside.iter().all(|&g| g & !f != 0));
        let size = w.count_ones() as usize;
        homology_from_faces(&faces, field)
            .into_iter()
            .enumerate()
            .filter(|&(_, r)| r > 0)
            // entry k is H̃_{k-1}, so i = |W| - (k - 1) - 1 = |W| - k
            .map(|(k, r)| (size - k, size, r))
            .collect::<Vec<_>>()
    });
    let mut entries = BTreeMap::new();
    for (i, j, r) in contributions.into_iter().flatten() {
        *entries.entry((i, j)).or_insert(0) += r;
    }
    Ok(BettiTable { n, entries })
}

/// `S/I` is Cohen-Macaulay iff `pd(S/I) = n - dim(S/I)`, where
/// `dim(S/I) = n - height(I)` and the height is the least degree of a
/// generator of `I^∨`.
pub fn is_cohen_macaulay(ideal: &SquarefreeIdeal, field: FieldSpec) -> Result<bool> {
    let table = betti_table(ideal, field)?;
    Ok(cm_from_table(ideal, &table))
}

pub(crate) fn height(ideal: &SquarefreeIdeal) -> usize {
    match ideal.alexander_dual() {
        Ok(dual) => dual.generators().iter().map(|g| g.count_ones() as usize).min().unwrap_or(0),
        Err(_) => 0,
    }
}

pub(crate) fn cm_from_table(ideal: &SquarefreeIdeal, table: &BettiTable) -> bool {
    table.projective_dimension() == height(ideal)
}

pub(crate) fn linear_from_table(ideal: &SquarefreeIdeal, table: &BettiTable) -> bool {
    let Some(d) = ideal.single_degree() else {
        return false;
    };
    let linear = table
        .entries()
        .filter(|&((i, _), _)| i >= 1)
        .all(|((i, j), _)| j == i - 1 + d);
    linear
}

/// `I` has a linear resolution iff it is generated in one degree `d` and
/// `β_{i,j}(I) = 0` for `j ≠ i + d`.
pub fn has_linear_resolution(ideal: &SquarefreeIdeal, field: FieldSpec) -> Result<bool> {
    if ideal.single_degree().is_none() {
        return Ok(false);
    }
    let table = betti_table(ideal, field)?;
    Ok(linear_from_table(ideal, &table))
}

/// Checks that `I` is Cohen-Macaulay exactly when `I^∨` has a linear
/// resolution. Returns `true` when both sides agree.
pub fn eagon_reiner_check(ideal: &SquarefreeIdeal, field: FieldSpec) -> Result<bool> {
    let cm = is_cohen_macaulay(ideal, field)?;
    let lin = has_linear_resolution(&ideal.alexander_dual()?, field)?;
    Ok(cm == lin)
}
