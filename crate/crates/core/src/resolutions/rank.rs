//! Exact matrix rank over the rationals and over prime fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer types that can carry out one fraction-free elimination step.
trait ExactInt: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `(a * b - c * d) / p`, where the division is known to be exact.
    /// `None` signals overflow.
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self>;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(num % p, 0);
        Some(num / p)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        Some((a * b - c * d) / p)
    }
}

/// Fraction-free (Bareiss) elimination with column skipping; every
/// intermediate entry is a minor of the input, so all divisions are exact.
fn bareiss_rank<T: ExactInt>(rows: &[Vec<i64>], ncols: usize) -> Option<usize> {
    let mut m: Vec<Vec<T>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| T::from_i64(x)).collect())
        .collect();
    let nrows = m.len();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..ncols {
                row[j] = T::step(&pivot_row[col], &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Rank over `Q` of a dense integer matrix.
#[cfg(test)]
pub(crate) fn rank_rational(rows: &[Vec<i64>], ncols: usize) -> usize {
    bareiss_rank::<i128>(rows, ncols)
        .unwrap_or_else(|| bareiss_rank::<BigInt>(rows, ncols).expect("bigint never overflows"))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank over `F_p`, `p < 2^31` prime.
#[cfg(test)]
pub(crate) fn rank_mod_p(rows: &[Vec<i64>], ncols: usize, p: u64) -> usize {
    let pi = p as i64;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(pi) as u64).collect())
        .collect();
    let nrows = m.len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for x in m[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..ncols {
                row[j] = (row[j] + (p - f) * pivot_row[j]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// A sparse row: `(column, entry)` pairs sorted by column, no zeros.
pub(crate) type SparseRow = Vec<(usize, i64)>;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// `x * a - y * b` on sorted sparse rows, `None` on overflow.
fn combine_i128(a: &[(usize, i128)], x: i128, b: &[(usize, i128)], y: i128) -> Option<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (c, v) = match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, va.checked_mul(x)?)
            }
            (Some(&(ca, _)), Some(&(cb, vb))) if cb < ca => {
                j += 1;
                (cb, vb.checked_mul(y)?.checked_neg()?)
            }
            (Some(&(ca, va)), Some(&(_, vb))) => {
                i += 1;
                j += 1;
                (ca, va.checked_mul(x)?.checked_sub(vb.checked_mul(y)?)?)
            }
            (Some(&(ca, va)), None) => {
                i += 1;
                (ca, va.checked_mul(x)?)
            }
            (None, Some(&(cb, vb))) => {
                j += 1;
                (cb, vb.checked_mul(y)?.checked_neg()?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    let g = out.iter().fold(0i128, |g, &(_, v)| gcd(g, v));
    if g > 1 {
        for e in out.iter_mut() {
            e.1 /= g;
        }
    }
    Some(out)
}

/// Incremental sparse elimination over `Q` with content-normalised integer
/// rows; `None` when an entry leaves `i128`.
fn sparse_rank_i128(rows: &[SparseRow], ncols: usize) -> Option<usize> {
    let mut pivots: Vec<Option<Vec<(usize, i128)>>> = vec![None; ncols];
    let mut rank = 0;
    for r in rows {
        let mut v: Vec<(usize, i128)> = r.iter().map(|&(c, x)| (c, x as i128)).collect();
        while let Some(&(c, a)) = v.first() {
            match &pivots[c] {
                Some(p) => {
                    let b = p[0].1;
                    let g = gcd(a, b);
                    v = combine_i128(&v, b / g, p, a / g)?;
                }
                None => {
                    pivots[c] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Exact rank over `Q` of a sparse integer matrix.
pub(crate) fn sparse_rank_rational(rows: &[SparseRow], ncols: usize) -> usize {
    sparse_rank_i128(rows, ncols).unwrap_or_else(|| {
        let dense: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                let mut d = vec![0i64; ncols];
                for &(c, x) in r {
                    d[c] = x;
                }
                d
            })
            .collect();
        bareiss_rank::<BigInt>(&dense, ncols).expect("bigint never overflows")
    })
}

/// Rank over `F_p` of a sparse integer matrix.
pub(crate) fn sparse_rank_mod_p(rows: &[SparseRow], ncols: usize, p: u64) -> usize {
    let pi = p as i64;
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; ncols];
    let mut rank = 0;
    for r in rows {
        let mut v: Vec<(usize, u64)> = r
            .iter()
            .map(|&(c, x)| (c, x.rem_euclid(pi) as u64))
            .filter(|&(_, x)| x != 0)
            .collect();
        while let Some(&(c, a)) = v.first() {
            match &pivots[c] {
                Some(pr) => {
                    // v - a * pr, with pr normalised to a leading 1.
                    let f = p - a;
                    let mut out = Vec::with_capacity(v.len() + pr.len());
                    let (mut i, mut j) = (0, 0);
                    while i < v.len() || j < pr.len() {
                        let (col, x) = match (v.get(i), pr.get(j)) {
                            (Some(&(ci, xi)), Some(&(cj, _))) if ci < cj => {
                                i += 1;
                                (ci, xi)
                            }
                            (Some(&(ci, _)), Some(&(cj, xj))) if cj < ci => {
                                j += 1;
                                (cj, f * xj % p)
                            }
                            (Some(&(ci, xi)), Some(&(_, xj))) => {
                                i += 1;
                                j += 1;
                                (ci, (xi + f * xj) % p)
                            }
                            (Some(&(ci, xi)), None) => {
                                i += 1;
                                (ci, xi)
                            }
                            (None, Some(&(cj, xj))) => {
                                j += 1;
                                (cj, f * xj % p)
                            }
                            (None, None) => unreachable!(),
                        };
                        if x != 0 {
                            out.push((col, x));
                        }
                    }
                    v = out;
                }
                None => {
                    let inv = pow_mod(a, p - 2, p);
                    for e in v.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    pivots[c] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
