//! Small helpers around `BigRational`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_uint(n: &BigUint) -> Q {
    Q::from_integer(BigInt::from(n.clone()))
}

pub fn from_int(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Q, exp: usize) -> Q {
    num_traits::pow(base.clone(), exp)
}

/// Best-effort conversion to `f64`, also for values whose numerator and
/// denominator overflow a double individually.
pub fn to_f64(x: &Q) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = x.numer().bits() as i64 - x.denom().bits() as i64 - 60;
    let scaled = if shift > 0 {
        x.numer().clone() / (x.denom().clone() << shift as usize)
    } else {
        (x.numer().clone() << (-shift) as usize) / x.denom().clone()
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(a.trim().parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}
