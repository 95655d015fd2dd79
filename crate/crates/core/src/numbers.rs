//! Classical integer sequences: factorials, binomials, Catalan, central
//! factorial and Stirling numbers of the second kind.
//!
//! Everything returns arbitrary-precision integers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `Cat_r = binom(2r, r) / (r + 1)`.
pub fn catalan(r: usize) -> BigUint {
    binomial(2 * r, r) / BigUint::from(r + 1)
}

/// Catalan numbers through the convolution recurrence; kept as an independent check.
pub fn catalan_by_recurrence(rmax: usize) -> Vec<BigUint> {
    let mut cat = vec![BigUint::one()];
    for r in 1..=rmax {
        let next = (0..r).map(|q| &cat[q] * &cat[r - 1 - q]).sum();
        cat.push(next);
    }
    cat
}

/// Central factorial number `T(m, n)`, defined by
/// `z^n / ((1 - 1^2 z) ... (1 - n^2 z)) = sum_m T(m, n) z^m`.
///
/// Computed with `T(m, n) = n^2 T(m-1, n) + T(m-1, n-1)` and `T(0, 0) = 1`.
pub fn central_factorial(m: usize, n: usize) -> BigUint {
    triangle(m, n, |j| BigUint::from(j * j))
}

/// Stirling number of the second kind `S(m, n)`, via `S(m, n) = n S(m-1, n) + S(m-1, n-1)`.
pub fn stirling2(m: usize, n: usize) -> BigUint {
    triangle(m, n, BigUint::from)
}

fn triangle(m: usize, n: usize, weight: impl Fn(usize) -> BigUint) -> BigUint {
    if n > m {
        return BigUint::zero();
    }
    // row[j] holds the value at (current m, j) for j <= n
    let mut row = vec![BigUint::zero(); n + 1];
    row[0] = BigUint::one();
    for _ in 0..m {
        for j in (1..=n).rev() {
            row[j] = weight(j) * &row[j] + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[n].clone()
}

/// `T(m, n) = 2 sum_{j=1}^n j^{2m} (-1)^{n-j} / ((n-j)! (n+j)!)` for `m, n >= 1`.
pub fn central_factorial_explicit(m: usize, n: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for j in 1..=n {
        let num = BigInt::from(j).pow(2 * m as u32);
        let den = BigInt::from(factorial(n - j) * factorial(n + j));
        let term = BigRational::new(num, den);
        if (n - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc * BigRational::from_integer(BigInt::from(2))
}

/// `S(m, n) = sum_{j=1}^n j^{m-1} (-1)^{n-j} / ((j-1)! (n-j)!)` for `m, n >= 1`.
pub fn stirling2_explicit(m: usize, n: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for j in 1..=n {
        let num = BigInt::from(j).pow((m - 1) as u32);
        let den = BigInt::from(factorial(j - 1) * factorial(n - j));
        let term = BigRational::new(num, den);
        if (n - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[cfg(test)]
/// Converts a non-negative rational known to be integral.
pub(crate) fn to_biguint(q: &BigRational) -> Option<BigUint> {
    if q.is_integer() && *q >= BigRational::zero() {
        q.to_integer().to_biguint()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn catalan_table() {
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (r, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(r), u(c));
        }
        assert_eq!(catalan_by_recurrence(8), expected.map(u).to_vec());
    }

    #[test]
    fn central_factorial_values() {
        assert_eq!(central_factorial(3, 2), u(5));
        assert_eq!(central_factorial(4, 3), u(14));
        assert_eq!(central_factorial(1, 1), u(1));
        for m in 1..6 {
            assert_eq!(central_factorial(m, 0), u(0));
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(7, 5), u(140));
        assert_eq!(stirling2(5, 5), u(1));
        assert_eq!(stirling2(6, 4), u(65));
        assert_eq!(stirling2(3, 5), u(0));
    }

    #[test]
    fn explicit_formulas_agree() {
        for n in 1..8 {
            for m in n..n + 6 {
                let t = central_factorial_explicit(m, n);
                assert_eq!(to_biguint(&t), Some(central_factorial(m, n)), "T({m},{n})");
                let s = stirling2_explicit(m, n);
                assert_eq!(to_biguint(&s), Some(stirling2(m, n)), "S({m},{n})");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), u(120));
        assert_eq!(binomial(3, 5), u(0));
        assert_eq!(factorial(6), u(720));
    }
}
