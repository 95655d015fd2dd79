//! Fraction-free elimination over the integers and over `Z[z]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::PolyZ;
use crate::rational::Q;

/// Exact inverse of a square integer matrix.
///
/// Bareiss elimination on `[A | I]` yields an upper-triangular integer system
/// whose last pivot `d` is `+-det A`; back substitution then produces `d A^{-1}`
/// with exact integer divisions, and a single rational division finishes.
pub fn invert_integer_matrix(a: &[Vec<BigInt>]) -> Result<Vec<Vec<Q>>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let width = 2 * n;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular(n))?;
            m.swap(k, swap);
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..width {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v.div_exact(&prev);
            }
            row[k] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = m[n - 1][n - 1].clone();
    let mut inv = vec![vec![Q::zero(); n]; n];
    for col in 0..n {
        // x = d * A^{-1} e_col, integral
        let mut x = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut acc = &d * &m[i][n + col];
            for j in i + 1..n {
                acc -= &m[i][j] * &x[j];
            }
            let (quot, rem) = acc.div_rem(&m[i][i]);
            debug_assert!(rem.is_zero());
            x[i] = quot;
        }
        for i in 0..n {
            inv[i][col] = Q::new(x[i].clone(), d.clone());
        }
    }
    Ok(inv)
}

/// Determinant of a square matrix over `Z[z]` by Bareiss elimination with exact
/// polynomial division.
pub fn polynomial_determinant(mut m: Vec<Vec<PolyZ>>) -> Result<PolyZ> {
    let n = m.len();
    if n == 0 {
        return Ok(PolyZ::one());
    }
    let mut prev = PolyZ::one();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(s) => {
                    m.swap(k, s);
                    negate = !negate;
                }
                None => return Ok(PolyZ::zero()),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let v = pivot.mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = v.exact_div(&prev).ok_or(Error::Singular(n))?;
            }
            row[k] = PolyZ::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

trait DivExact {
    fn div_exact(&self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }
}
