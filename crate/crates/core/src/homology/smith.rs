//! Sparse integer diagonalization by unimodular row and column operations.
//!
//! The pivot is the smallest-magnitude entry of the active column (ties go
//! to the shortest row). Elimination runs in `i64` with overflow checks and
//! restarts in arbitrary precision if an entry would overflow.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Entry: Clone {
    fn from_i8(v: i8) -> Self;
    fn is_zero(&self) -> bool;
    fn cmp_magnitude(&self, other: &Self) -> Ordering;
    /// Truncating quotient `a / b`.
    fn quotient(&self, b: &Self) -> Self;
    /// `self - q·b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn magnitude(&self) -> BigUint;
}

impl Entry for i64 {
    fn from_i8(v: i8) -> Self {
        v as i64
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }

    fn quotient(&self, b: &Self) -> Self {
        self / b
    }

    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        // i64::MIN has no negation, keep it out of the matrix
        self.checked_sub(q.checked_mul(*b)?)
            .filter(|&v| v != i64::MIN)
    }

    fn magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn from_i8(v: i8) -> Self {
        BigInt::from(v)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }

    fn quotient(&self, b: &Self) -> Self {
        self / b
    }

    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }

    fn magnitude(&self) -> BigUint {
        self.abs().to_biguint().expect("absolute value is nonnegative")
    }
}

/// Nonzero diagonal entries (as magnitudes) of an equivalent diagonal form.
/// Their count is the rank.
pub(crate) fn diagonal(nrows: usize, columns: &[Vec<(usize, i8)>]) -> Vec<BigUint> {
    match eliminate::<i64>(nrows, columns) {
        Some(d) => d,
        None => eliminate::<BigInt>(nrows, columns).expect("big integers do not overflow"),
    }
}

struct Sparse<T> {
    /// Row entries sorted by column.
    rows: Vec<Vec<(usize, T)>>,
    /// Rows holding a nonzero entry, per column.
    cols: Vec<BTreeSet<usize>>,
}

impl<T: Entry> Sparse<T> {
    fn get(&self, r: usize, c: usize) -> Option<&T> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |&(j, _)| j)
            .ok()
            .map(|k| &row[k].1)
    }

    /// `row_i -= q · row_p`.
    fn row_sub(&mut self, i: usize, p: usize, q: &T) -> Option<()> {
        let old = std::mem::take(&mut self.rows[i]);
        let pivot_row = &self.rows[p];
        let zero = T::from_i8(0);
        let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
        let (mut x, mut y) = (0, 0);
        while x < old.len() || y < pivot_row.len() {
            let ja = old.get(x).map(|e| e.0);
            let jb = pivot_row.get(y).map(|e| e.0);
            match (ja, jb) {
                (Some(a), Some(b)) if a == b => {
                    let v = old[x].1.sub_mul(q, &pivot_row[y].1)?;
                    if v.is_zero() {
                        self.cols[a].remove(&i);
                    } else {
                        merged.push((a, v));
                    }
                    x += 1;
                    y += 1;
                }
                (Some(a), None) => {
                    merged.push((a, old[x].1.clone()));
                    x += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    merged.push(old[x].clone());
                    x += 1;
                }
                (_, Some(b)) => {
                    let v = zero.sub_mul(q, &pivot_row[y].1)?;
                    if !v.is_zero() {
                        self.cols[b].insert(i);
                        merged.push((b, v));
                    }
                    y += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.rows[i] = merged;
        Some(())
    }

    fn remove_row(&mut self, p: usize) {
        for (j, _) in std::mem::take(&mut self.rows[p]) {
            self.cols[j].remove(&p);
        }
    }
}

fn eliminate<T: Entry>(nrows: usize, columns: &[Vec<(usize, i8)>]) -> Option<Vec<BigUint>> {
    let mut m = Sparse::<T> {
        rows: vec![Vec::new(); nrows],
        cols: vec![BTreeSet::new(); columns.len()],
    };
    for (c, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            if v != 0 {
                m.rows[r].push((c, T::from_i8(v)));
                m.cols[c].insert(r);
            }
        }
    }
    let mut diag = Vec::new();
    for c in 0..columns.len() {
        while !m.cols[c].is_empty() {
            let mut cur = c;
            loop {
                let p = *m.cols[cur]
                    .iter()
                    .min_by(|&&a, &&b| {
                        let (va, vb) = (m.get(a, cur).unwrap(), m.get(b, cur).unwrap());
                        va.cmp_magnitude(vb)
                            .then(m.rows[a].len().cmp(&m.rows[b].len()))
                    })
                    .expect("column is nonempty");
                let pivot = m.get(p, cur).unwrap().clone();
                let others: Vec<usize> = m.cols[cur].iter().copied().filter(|&i| i != p).collect();
                let mut remainder = false;
                for i in others {
                    let q = m.get(i, cur).unwrap().quotient(&pivot);
                    m.row_sub(i, p, &q)?;
                    remainder |= m.get(i, cur).is_some();
                }
                if remainder {
                    continue;
                }
                // column `cur` is now zero outside the pivot row
                let mut indivisible = None;
                for (k, (j, v)) in m.rows[p].iter().enumerate() {
                    let r = v.sub_mul(&v.quotient(&pivot), &pivot)?;
                    if *j != cur && !r.is_zero() {
                        indivisible = Some((k, *j, r));
                        break;
                    }
                }
                if let Some((k, j, r)) = indivisible {
                    // column op col_j -= q·col_cur only touches row p
                    m.rows[p][k].1 = r;
                    cur = j;
                    continue;
                }
                diag.push(pivot.magnitude());
                m.remove_row(p);
                break;
            }
        }
    }
    Some(diag)
}

/// Invariant factors `d_1 | d_2 | …` (all > 1) of `⊕ Z/d_i` for the given
/// diagonal entries.
pub(crate) fn invariant_factors(diag: &[BigUint]) -> Vec<BigUint> {
    let mut d: Vec<BigUint> = diag.iter().filter(|v| !v.is_one()).cloned().collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|v| !v.is_one());
    d
}

pub(crate) fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}
