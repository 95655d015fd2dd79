//! Sparse elements of the group algebra of `S(n)` and class-basis coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::partitions::Partition;
use crate::perm::{canonical_permutation, class_size, enumerate_class, Permutation};
use crate::rational::Q;
use crate::symfun::{Generator, SymFunSpec};

/// Largest degree accepted by [`eval_symfun_direct`].
pub const DIRECT_MAX_DEGREE: usize = 9;

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    degree: usize,
    terms: HashMap<Permutation, Q>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { degree: n, terms: HashMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::delta(Permutation::identity(n))
    }

    pub fn delta(p: Permutation) -> Self {
        let degree = p.degree();
        let mut terms = HashMap::new();
        terms.insert(p, Q::one());
        AlgebraElement { degree, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, Q)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (p, c) in terms {
            if p.degree() != n {
                return Err(Error::DegreeMismatch { left: n, right: p.degree() });
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, p: Permutation, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &HashMap<Permutation, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, s: &Permutation) -> Result<Q> {
        if s.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: s.degree() });
        }
        Ok(self.terms.get(s).cloned().unwrap_or_else(Q::zero))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        AlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.compose_unchecked(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// `self * J_t` without materializing `J_t`.
    pub fn mul_jm(&self, t: usize) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, c) in &self.terms {
            for s in 1..t {
                out.add_term(p.compose_unchecked(&Permutation::transposition(self.degree, s, t)), c.clone());
            }
        }
        out
    }

    /// Class-basis coordinates; fails with the first pair of class members whose
    /// coefficients differ.
    pub fn to_class_vector(&self) -> Result<ClassVector> {
        let n = self.degree;
        let mut seen: HashMap<Partition, (Permutation, Q, usize)> = HashMap::new();
        for (p, c) in &self.terms {
            let mu = p.reduced_cycle_type();
            match seen.get_mut(&mu) {
                Some((first, fc, count)) => {
                    if fc != c {
                        return Err(not_central(&mu, first, fc, p, c));
                    }
                    *count += 1;
                }
                None => {
                    seen.insert(mu, (p.clone(), c.clone(), 1));
                }
            }
        }
        let mut coeffs = BTreeMap::new();
        for (mu, (first, fc, count)) in seen {
            if num_bigint::BigUint::from(count) != class_size(&mu, n) {
                let missing = enumerate_class(&mu, n)
                    .into_iter()
                    .find(|q| !self.terms.contains_key(q))
                    .expect("class has a member without a term");
                return Err(not_central(&mu, &first, &fc, &missing, &Q::zero()));
            }
            coeffs.insert(mu, fc);
        }
        Ok(ClassVector { degree: n, coeffs })
    }
}

fn not_central(mu: &Partition, a: &Permutation, ca: &Q, b: &Permutation, cb: &Q) -> Error {
    Error::NotCentral {
        class: mu.to_string(),
        first: a.to_string(),
        first_coeff: ca.to_string(),
        second: b.to_string(),
        second_coeff: cb.to_string(),
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort();
        write!(f, "AlgebraElement(n={}, {:?})", self.degree, terms)
    }
}

/// `J_k = (1,k) + ... + (k-1,k)` in `C[S(n)]`.
pub fn jm_element(k: usize, n: usize) -> Result<AlgebraElement> {
    if k == 0 || k > n {
        return Err(domain(format!("J_{k} is not defined in S({n})")));
    }
    Ok(AlgebraElement::identity(n).mul_jm(k))
}

/// Indicator sum of the class of reduced type `m` in `S(n)`.
pub fn class_indicator(m: &Partition, n: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(n);
    for p in enumerate_class(m, n) {
        out.terms.insert(p, Q::one());
    }
    out
}

/// Class-basis coordinates of the product of two class sums in `S(n)`.
///
/// The coefficient at `mu` counts pairs `x` of type `a` with `x^{-1} sigma_mu` of type `b`.
pub fn class_product(a: &Partition, b: &Partition, n: usize) -> Result<ClassVector> {
    if n > DIRECT_MAX_DEGREE {
        return Err(Error::Resource(format!("class products are enumerated only for n <= {DIRECT_MAX_DEGREE}")));
    }
    let left = enumerate_class(a, n);
    let mut coeffs = BTreeMap::new();
    for mu in crate::partitions::partitions_of_weight_at_most(n) {
        let target = canonical_permutation(&mu, n)?;
        let count = left
            .iter()
            .filter(|x| x.inverse().compose_unchecked(&target).reduced_cycle_type() == *b)
            .count();
        if count > 0 {
            coeffs.insert(mu, Q::from_integer(count.into()));
        }
    }
    Ok(ClassVector { degree: n, coeffs })
}

/// `f(Xi_n)` as an explicit sum of products of Jucys-Murphy elements.
pub fn eval_symfun_direct(f: &SymFunSpec, n: usize) -> Result<AlgebraElement> {
    if n == 0 || n > DIRECT_MAX_DEGREE {
        return Err(Error::Resource(format!(
            "direct evaluation needs 1 <= n <= {DIRECT_MAX_DEGREE}, got {n}"
        )));
    }
    let mut acc = AlgebraElement::identity(n);
    for g in &f.factors {
        acc = generator_times(&acc, g, n);
    }
    Ok(acc)
}

/// `a * g(Xi_n)`, built by a pass over `t = 2..n` that never leaves the group algebra.
fn generator_times(a: &AlgebraElement, g: &Generator, n: usize) -> AlgebraElement {
    match g {
        Generator::E(k) => {
            // layers[j] = a * e_j(J_2..J_t)
            let mut layers = vec![AlgebraElement::zero(n); k + 1];
            layers[0] = a.clone();
            for t in 2..=n {
                for j in (1..=*k).rev() {
                    if !layers[j - 1].is_zero() {
                        let add = layers[j - 1].mul_jm(t);
                        layers[j] = layers[j].add(&add).expect("same degree");
                    }
                }
            }
            layers.swap_remove(*k)
        }
        Generator::H(k) => {
            let mut layers = vec![AlgebraElement::zero(n); k + 1];
            layers[0] = a.clone();
            for t in 2..=n {
                for j in 1..=*k {
                    if !layers[j - 1].is_zero() {
                        let add = layers[j - 1].mul_jm(t);
                        layers[j] = layers[j].add(&add).expect("same degree");
                    }
                }
            }
            layers.swap_remove(*k)
        }
        Generator::P(0) => a.scale(&Q::from_integer(n.into())),
        Generator::P(k) => {
            let mut out = AlgebraElement::zero(n);
            for t in 2..=n {
                let mut term = a.clone();
                for _ in 0..*k {
                    term = term.mul_jm(t);
                }
                out = out.add(&term).expect("same degree");
            }
            out
        }
        Generator::M(l) => {
            // states index how many parts of each distinct size are already placed
            let mults = l.multiplicities();
            let radix: Vec<usize> = mults.iter().map(|&(_, c)| c + 1).collect();
            let states: usize = radix.iter().product();
            let mut table = vec![AlgebraElement::zero(n); states];
            table[0] = a.clone();
            let step: Vec<usize> = radix
                .iter()
                .scan(1, |acc, &r| {
                    let s = *acc;
                    *acc *= r;
                    Some(s)
                })
                .collect();
            for t in 2..=n {
                let prev = table.clone();
                for (s, val) in prev.iter().enumerate() {
                    if val.is_zero() {
                        continue;
                    }
                    for (i, &(part, count)) in mults.iter().enumerate() {
                        if (s / step[i]) % radix[i] < count {
                            let mut term = val.clone();
                            for _ in 0..part {
                                term = term.mul_jm(t);
                            }
                            let target = s + step[i];
                            table[target] = table[target].add(&term).expect("same degree");
                        }
                    }
                }
            }
            table.swap_remove(states - 1)
        }
    }
}

/// Coordinates of a central element in the basis of class sums.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassVector {
    pub degree: usize,
    /// Nonzero coefficients only.
    pub coeffs: BTreeMap<Partition, Q>,
}

impl ClassVector {
    pub fn new(degree: usize, coeffs: impl IntoIterator<Item = (Partition, Q)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (mu, c) in coeffs {
            if mu.weight() > degree {
                return Err(domain(format!("class {mu} is empty in S({degree})")));
            }
            if !c.is_zero() {
                map.insert(mu, c);
            }
        }
        Ok(ClassVector { degree, coeffs: map })
    }

    pub fn get(&self, mu: &Partition) -> Q {
        self.coeffs.get(mu).cloned().unwrap_or_else(Q::zero)
    }

    /// Entries ordered by decreasing size, then reverse lexicographically.
    pub fn sorted(&self) -> Vec<(&Partition, &Q)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by(|a, b| b.0.size().cmp(&a.0.size()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_class_terms(self.sorted()))
    }
}

/// Renders `(mu, coefficient)` pairs as `5 c(3) + (1/2) c(1) + ...`; `0` when empty.
pub fn format_class_terms<'a>(terms: impl IntoIterator<Item = (&'a Partition, &'a Q)>) -> String {
    let terms: Vec<String> = terms
        .into_iter()
        .map(|(mu, c)| {
            let c = if c.denom().is_one() { c.to_string() } else { format!("({c})") };
            format!("{c} c({mu})")
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassVector(n={}: {})", self.degree, self)
    }
}
