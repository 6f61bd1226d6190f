//! Exact ranks of sparse integer matrices.
//!
//! Over the rationals: sparse elimination on unit pivots (integer row
//! operations only), then fraction-free Bareiss elimination on whatever is
//! left. Bareiss runs in checked `i128` and restarts in `BigInt` on
//! overflow. Over `GF(p)`: plain sparse Gaussian elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// One sparse row: `(column, value)` pairs, columns strictly increasing,
/// no zero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Rank over ℚ.
pub fn rank_rational(rows: &[SparseRow], ncols: usize) -> usize {
    let mut work: Vec<Vec<(usize, i128)>> = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, v as i128)).collect())
        .filter(|r: &Vec<(usize, i128)>| !r.is_empty())
        .collect();
    let mut rank = 0;

    // Unit pivots: shortest row holding a ±1 entry.
    loop {
        let pick = work
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.iter().find(|(_, v)| v.abs() == 1).map(|&(c, v)| (r.len(), i, c, v))
            })
            .min();
        let Some((_, pi, pc, pv)) = pick else { break };
        let pivot = work.swap_remove(pi);
        let mut overflow = false;
        for row in &mut work {
            if let Ok(k) = row.binary_search_by_key(&pc, |e| e.0) {
                // row -= (a / pv) * pivot, exact since pv = ±1
                let factor = row[k].1 * pv;
                match axpy(row, &pivot, factor) {
                    Some(r) => *row = r,
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
        }
        if overflow {
            return rank_rational_bigint(rows, ncols);
        }
        work.retain(|r| !r.is_empty());
        rank += 1;
    }

    if work.is_empty() {
        return rank;
    }
    let cols: Vec<usize> = {
        let mut c: Vec<usize> = work.iter().flatten().map(|e| e.0).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let dense: Vec<Vec<i128>> = work
        .iter()
        .map(|r| {
            let mut d = vec![0i128; cols.len()];
            for &(c, v) in r {
                d[cols.binary_search(&c).unwrap()] = v;
            }
            d
        })
        .collect();
    rank + match bareiss_rank(dense.clone()) {
        Some(r) => r,
        None => bareiss_rank(
            dense
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .expect("BigInt arithmetic cannot overflow"),
    }
}

/// `row - factor * pivot`, merging sparse patterns; `None` on overflow.
fn axpy(
    row: &[(usize, i128)],
    pivot: &[(usize, i128)],
    factor: i128,
) -> Option<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, factor.checked_mul(pivot[j - 1].1)?.checked_neg()?)
        } else {
            i += 1;
            j += 1;
            (ci, row[i - 1].1.checked_sub(factor.checked_mul(pivot[j - 1].1)?)?)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    Some(out)
}

fn rank_rational_bigint(rows: &[SparseRow], ncols: usize) -> usize {
    let dense = rows
        .iter()
        .map(|r| {
            let mut d = vec![<BigInt as Zero>::zero(); ncols];
            for &(c, v) in r {
                d[c] = BigInt::from(v);
            }
            d
        })
        .collect();
    bareiss_rank(dense).expect("BigInt arithmetic cannot overflow")
}

/// Integer arithmetic used by Bareiss elimination; `None` means overflow.
pub trait BareissScalar: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `(a * d - b * c) / p`, exact.
    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self>;
}

impl BareissScalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        let num = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(num % p, 0, "Bareiss division must be exact");
        Some(num / p)
    }
}

impl BareissScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        let num = a * d - b * c;
        debug_assert!(Zero::is_zero(&(&num % p)));
        Some(num / p)
    }
}

/// Fraction-free Gaussian elimination. After step `k` every remaining entry
/// is a `(k+1)`-minor of the input, so each division is exact.
pub fn bareiss_rank<T: BareissScalar>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            for j in c + 1..ncols {
                row[j] = T::cross_div(&pivot_row[c], &row[j], &row[c], &pivot_row[j], &prev)?;
            }
            row[c] = T::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Some(r)
}

/// Rank over `GF(p)`, `p` prime below `2^31`.
pub fn rank_mod_p(rows: &[SparseRow], p: u32) -> usize {
    let p64 = p as u64;
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut work: Vec<Vec<(usize, u64)>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(c, v)| (c, reduce(v)))
                .filter(|e| e.1 != 0)
                .collect::<Vec<_>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    let mut rank = 0;
    while !work.is_empty() {
        let (pi, _) = work
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .expect("nonempty");
        let pivot = work.swap_remove(pi);
        let (pc, pv) = pivot[0];
        let inv = mod_pow(pv, p64 - 2, p64);
        for row in &mut work {
            if let Ok(k) = row.binary_search_by_key(&pc, |e| e.0) {
                let factor = row[k].1 * inv % p64;
                *row = axpy_mod(row, &pivot, factor, p64);
            }
        }
        work.retain(|r| !r.is_empty());
        rank += 1;
    }
    rank
}

fn axpy_mod(row: &[(usize, u64)], pivot: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, (p - factor * pivot[j - 1].1 % p) % p)
        } else {
            i += 1;
            j += 1;
            (ci, (row[i - 1].1 + p - factor * pivot[j - 1].1 % p) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Trial-division primality, enough for `p < 2^31`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
