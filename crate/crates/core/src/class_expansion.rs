//! Class coefficients of symmetric functions in Jucys-Murphy elements,
//! computed through characters, and their polynomial dependence on `n`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::ClassVector;
use crate::characters::{character, contents, hook_data};
use crate::error::{domain, Error, Result};
use crate::numbers::{catalan, central_factorial, factorial, stirling2};
use crate::partitions::{enumerate_partitions, partitions_of_weight_at_most, refinement_set, rc_formula, Partition};
use crate::perm::{canonical_permutation, Permutation};
use crate::poly::PolynomialQ;
use crate::rational::{from_uint, q, Q};
use crate::symfun::{complete, SymFunSpec};

/// `f(A_l) dim l` for every `l |- n`, the part of the character sum shared by all classes.
fn weighted_values(f: &SymFunSpec, n: usize) -> Vec<(Partition, Q)> {
    enumerate_partitions(n)
        .into_par_iter()
        .map(|l| {
            let v = f.eval(&contents(&l).values) * BigInt::from(hook_data(&l).dimension);
            (l, Q::from_integer(v))
        })
        .collect()
}

fn coefficient_from(values: &[(Partition, Q)], nu: &Partition, n: usize) -> Q {
    let total = values
        .par_iter()
        .map(|(l, v)| v * Q::from_integer(character(l, nu).expect("sizes agree")))
        .reduce(Q::zero, |a, b| a + b);
    total / from_uint(&factorial(n))
}

/// `G_m(f, n) = (1/n!) sum_l f(A_l) dim(l) chi^l_nu` with `nu` the inflation of `m`.
pub fn class_coeff(f: &SymFunSpec, m: &Partition, n: usize) -> Result<Q> {
    let nu = m.inflate(n)?;
    Ok(coefficient_from(&weighted_values(f, n), &nu, n))
}

/// All class coefficients of `f(Xi_n)` at once.
pub fn class_vector(f: &SymFunSpec, n: usize) -> Result<ClassVector> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let values = weighted_values(f, n);
    let entries = partitions_of_weight_at_most(n)
        .into_iter()
        .map(|m| {
            let nu = m.inflate(n).expect("weight checked");
            let c = coefficient_from(&values, &nu, n);
            (m, c)
        })
        .collect::<Vec<_>>();
    ClassVector::new(n, entries)
}

/// `F^0_m(n), ..., F^kmax_m(n)`: Taylor coefficients of
/// `sum_l chi^l_nu / (H_l prod_cells (1 - c z))`.
pub fn f_coeffs(m: &Partition, n: usize, kmax: usize) -> Result<Vec<Q>> {
    let nu = m.inflate(n)?;
    let zero = vec![Q::zero(); kmax + 1];
    let total = enumerate_partitions(n)
        .into_par_iter()
        .map(|l| {
            let chi = character(&l, &nu).expect("sizes agree");
            if chi.is_zero() {
                return vec![Q::zero(); kmax + 1];
            }
            let weight = Q::new(chi, BigInt::from(hook_data(&l).hook_product));
            complete(&contents(&l).values, kmax)
                .into_iter()
                .map(|h| &weight * Q::from_integer(h))
                .collect()
        })
        .reduce(|| zero.clone(), |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect());
    Ok(total)
}

/// The polynomial `G_m(f, t)`, fitted on `deg f + 1` consecutive values of `n`
/// starting at `max(wt(m), 1)` and certified on one more.
pub fn interpolate_class_poly(f: &SymFunSpec, m: &Partition) -> Result<PolynomialQ> {
    let start = m.weight().max(1);
    let deg = f.degree();
    let points: Vec<(Q, Q)> = (start..=start + deg + 1)
        .map(|n| Ok((q(n as i64), class_coeff(f, m, n)?)))
        .collect::<Result<_>>()?;
    let poly = PolynomialQ::interpolate(&points[..deg + 1]);
    let (x, y) = &points[deg + 1];
    if poly.eval(x) != *y {
        return Err(Error::DegreeBound(format!(
            "G_{m}({f}, t): fitted polynomial gives {} at t = {x}, direct value {y}",
            poly.eval(x)
        )));
    }
    Ok(poly)
}

/// Interpolated polynomial coefficients for every class of size at most `deg f`.
pub fn class_polys(f: &SymFunSpec) -> Result<BTreeMap<Partition, PolynomialQ>> {
    let deg = f.degree();
    let mut out = BTreeMap::new();
    for k in 0..=deg {
        for m in enumerate_partitions(k) {
            let p = interpolate_class_poly(f, &m)?;
            if !p.is_zero() {
                out.insert(m, p);
            }
        }
    }
    Ok(out)
}

/// `L^l_m`: sum over refinements of `l` into the parts of `m` of the product of refined Catalan numbers.
pub fn top_coeff_l(l: &Partition, m: &Partition) -> Result<BigUint> {
    Ok(refinement_set(l, m)?
        .iter()
        .map(|t| t.blocks.iter().map(rc_formula).product::<BigUint>())
        .sum())
}

/// `F^{|m|}_m = prod_i Cat_{m_i}`.
pub fn top_coeff_f(m: &Partition) -> BigUint {
    m.parts().iter().map(|&p| catalan(p)).product()
}

/// `L^{(2r)}_{()}(t) = sum_{p=1}^r (2p)! / ((p+1)!)^2 T(r, p) t(t-1)...(t-p)`.
pub fn fkmo_l(r: usize) -> PolynomialQ {
    let mut acc = PolynomialQ::zero();
    for p in 1..=r {
        let fp1 = factorial(p + 1);
        let c = from_uint(&(factorial(2 * p) * central_factorial(r, p))) / from_uint(&(&fp1 * &fp1));
        acc = &acc + &PolynomialQ::falling(p).scale(&c);
    }
    acc
}

/// `sum_{l |- n} f(A_l) (dim l)^2 / n!`.
pub fn plancherel_average(f: &SymFunSpec, n: usize) -> Result<Q> {
    class_coeff(f, &Partition::empty(), n)
}

pub fn plancherel_poly(f: &SymFunSpec) -> Result<PolynomialQ> {
    interpolate_class_poly(f, &Partition::empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationMode {
    /// `t_1 <= ... <= t_k`.
    JmMonotone,
    /// Monotone, with the sequence `(t_i)` of the given type.
    JmType(Partition),
}

/// Upper bound on the number of monotone transposition sequences the
/// factorization search may visit.
pub const FACTORIZATION_BUDGET: u64 = 50_000_000;

/// Number of factorizations `sigma_m = (s_1 t_1) ... (s_k t_k)` with `s_i < t_i`
/// and `t_1 <= ... <= t_k` (optionally of a given type), by depth-first search.
pub fn brute_factorization_count(m: &Partition, n: usize, k: usize, mode: &FactorizationMode) -> Result<BigUint> {
    let target = canonical_permutation(m, n)?;
    // all monotone sequences: h_k(1, ..., n-1) = S(n-1+k, n-1)
    let space = if n >= 1 { stirling2(n - 1 + k, n - 1) } else { BigUint::zero() };
    if space > BigUint::from(FACTORIZATION_BUDGET) {
        return Err(Error::Resource(format!(
            "{space} monotone transposition sequences exceed the budget of {FACTORIZATION_BUDGET}"
        )));
    }
    if let FactorizationMode::JmType(l) = mode {
        if l.size() != k {
            return Ok(BigUint::zero());
        }
    }
    let mut search = Search { n, k, target, mode, ts: Vec::with_capacity(k), count: 0 };
    search.go(&Permutation::identity(n), 2);
    Ok(BigUint::from(search.count))
}

struct Search<'a> {
    n: usize,
    k: usize,
    target: Permutation,
    mode: &'a FactorizationMode,
    ts: Vec<usize>,
    count: u64,
}

impl Search<'_> {
    fn go(&mut self, prod: &Permutation, tmin: usize) {
        let depth = self.ts.len();
        let rest = prod.inverse().compose_unchecked(&self.target);
        let dist = rest.transposition_distance();
        let left = self.k - depth;
        if dist > left || (left - dist) % 2 == 1 {
            return;
        }
        if left == 0 {
            let ok = match self.mode {
                FactorizationMode::JmMonotone => true,
                FactorizationMode::JmType(l) => {
                    self.ts.is_empty() || crate::partitions::sequence_type(&self.ts).ok().as_ref() == Some(l)
                }
            };
            if ok {
                self.count += 1;
            }
            return;
        }
        for t in tmin..=self.n {
            self.ts.push(t);
            for s in 1..t {
                let next = prod.compose_unchecked(&Permutation::transposition(self.n, s, t));
                self.go(&next, t);
            }
            self.ts.pop();
        }
    }
}
