//! Polynomials in the generators `e_r` or `h_r`, the functions `h*_r`, and the
//! transition matrix between `e_l` and signed products of `h*_r`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::class_expansion::top_coeff_l;
use crate::error::Result;
use crate::partitions::{enumerate_partitions, rc_formula, Partition};
use crate::rational::{from_uint, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    E,
    H,
}

impl GeneratorKind {
    fn letter(self) -> char {
        match self {
            GeneratorKind::E => 'e',
            GeneratorKind::H => 'h',
        }
    }
}

/// `sum_l c_l g_l` with `g_l = g_{l_1} g_{l_2} ...`.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorPolynomial {
    pub kind: GeneratorKind,
    pub terms: BTreeMap<Partition, Q>,
}

impl GeneratorPolynomial {
    pub fn zero(kind: GeneratorKind) -> Self {
        GeneratorPolynomial { kind, terms: BTreeMap::new() }
    }

    pub fn one(kind: GeneratorKind) -> Self {
        Self::monomial(kind, Partition::empty(), Q::one())
    }

    pub fn monomial(kind: GeneratorKind, l: Partition, c: Q) -> Self {
        let mut out = Self::zero(kind);
        out.add_term(l, c);
        out
    }

    /// The single generator `g_r` (`g_0 = 1`).
    pub fn generator(kind: GeneratorKind, r: usize) -> Self {
        Self::monomial(kind, Partition::from_unsorted(vec![r]), Q::one())
    }

    fn add_term(&mut self, l: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(l).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, l: &Partition) -> Q {
        self.terms.get(l).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest graded degree among the terms.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind);
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.kind);
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind);
        let mut out = Self::zero(self.kind);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.union(b), ca * cb);
            }
        }
        out
    }

    /// Drops terms of graded degree above `d`.
    fn truncate(&self, d: usize) -> Self {
        GeneratorPolynomial {
            kind: self.kind,
            terms: self.terms.iter().filter(|(l, _)| l.size() <= d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }
}

impl fmt::Display for GeneratorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let g = self.kind.letter();
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for l in keys {
            let c = &self.terms[l];
            let mono = if l.is_empty() {
                String::new()
            } else {
                l.parts().iter().map(|p| format!("{g}{p}")).collect::<Vec<_>>().join("*")
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = match (mag.is_one(), mono.is_empty()) {
                (true, false) => mono,
                (_, true) => mag.to_string(),
                (false, false) => format!("{mag}*{mono}"),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for GeneratorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `h*_r = (-1)^r sum_{l |- r} RC(l) e_l`.
pub fn hstar_in_e(r: usize) -> GeneratorPolynomial {
    let mut out = GeneratorPolynomial::zero(GeneratorKind::E);
    for l in enumerate_partitions(r) {
        let c = sign(r) * from_uint(&rc_formula(&l));
        out.add_term(l, c);
    }
    out
}

/// `h*_1, ..., h*_rmax` in the h-generators, from the compositional inverse of
/// `u = t + sum_r h_r t^{r+1}`, solved one degree at a time.
pub fn hstar_by_reversion(rmax: usize) -> Vec<GeneratorPolynomial> {
    let kind = GeneratorKind::H;
    let top = rmax + 1;
    // series[j] is the coefficient of u^j in t(u)
    let mut series = vec![GeneratorPolynomial::zero(kind); top + 1];
    series[1] = GeneratorPolynomial::one(kind);
    for m in 1..=rmax {
        // [u^{m+1}] sum_{r=1}^{m} h_r t^{r+1}, using the known coefficients of t
        let mut power = series.clone();
        let mut acc = GeneratorPolynomial::zero(kind);
        for r in 1..=m {
            power = series_mul(&power, &series, top);
            acc = acc.add(&GeneratorPolynomial::generator(kind, r).mul(&power[m + 1]));
        }
        series[m + 1] = acc.scale(&-Q::one());
    }
    series.into_iter().skip(2).collect()
}

fn series_mul(a: &[GeneratorPolynomial], b: &[GeneratorPolynomial], top: usize) -> Vec<GeneratorPolynomial> {
    let kind = a[0].kind;
    let mut out = vec![GeneratorPolynomial::zero(kind); top + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(top + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// `g_1, ..., g_d` of one kind written in the other, by
/// `g_k = sum_{i=1}^k (-1)^{i-1} g_{k-i} g'_i`.
fn basis_images(target: GeneratorKind, d: usize) -> Vec<GeneratorPolynomial> {
    let mut images = vec![GeneratorPolynomial::one(target)];
    for k in 1..=d {
        let mut acc = GeneratorPolynomial::zero(target);
        for i in 1..=k {
            let term = images[k - i].mul(&GeneratorPolynomial::generator(target, i)).scale(&sign(i - 1));
            acc = acc.add(&term);
        }
        images.push(acc.truncate(k));
    }
    images
}

fn convert(p: &GeneratorPolynomial, target: GeneratorKind) -> GeneratorPolynomial {
    let d = p.degree().unwrap_or(0);
    let images = basis_images(target, d);
    let mut out = GeneratorPolynomial::zero(target);
    for (l, c) in &p.terms {
        let mut term = GeneratorPolynomial::one(target);
        for &part in l.parts() {
            term = term.mul(&images[part]);
        }
        out = out.add(&term.scale(c));
    }
    out
}

pub fn convert_e_to_h(p: &GeneratorPolynomial) -> GeneratorPolynomial {
    assert_eq!(p.kind, GeneratorKind::E);
    convert(p, GeneratorKind::H)
}

pub fn convert_h_to_e(p: &GeneratorPolynomial) -> GeneratorPolynomial {
    assert_eq!(p.kind, GeneratorKind::H);
    convert(p, GeneratorKind::E)
}

#[derive(Clone, Debug)]
pub struct TransitionReport {
    pub k: usize,
    /// Partitions of `k` in reverse lexicographic order; rows are `l`, columns `m`.
    pub partitions: Vec<Partition>,
    /// `matrix[row][col] = L^{row}_{col}`.
    pub matrix: Vec<Vec<BigInt>>,
    pub column_ok: Vec<bool>,
    pub mismatches: Vec<String>,
}

impl TransitionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `(-1)^k h*_m = sum_l L^l_m e_l` for every `m |- k`, with `h*` from series reversion.
pub fn transition_check(k: usize) -> Result<TransitionReport> {
    let parts = enumerate_partitions(k);
    let hstar = hstar_by_reversion(k.max(1));
    let mut matrix = vec![vec![BigInt::zero(); parts.len()]; parts.len()];
    for (i, l) in parts.iter().enumerate() {
        for (j, m) in parts.iter().enumerate() {
            matrix[i][j] = BigInt::from(top_coeff_l(l, m)?);
        }
    }
    let mut column_ok = Vec::new();
    let mut mismatches = Vec::new();
    for (j, m) in parts.iter().enumerate() {
        let mut prod = GeneratorPolynomial::one(GeneratorKind::H);
        for &p in m.parts() {
            prod = prod.mul(&hstar[p - 1]);
        }
        let lhs = convert_h_to_e(&prod).scale(&sign(k));
        let mut ok = true;
        for (i, l) in parts.iter().enumerate() {
            let got = lhs.coeff(l);
            let want = Q::from_integer(matrix[i][j].clone());
            if got != want {
                ok = false;
                mismatches.push(format!("column {m}, row {l}: series reversion gives {got}, L gives {want}"));
            }
        }
        if lhs.terms.keys().any(|l| l.size() != k) {
            ok = false;
            mismatches.push(format!("column {m}: terms outside degree {k}"));
        }
        column_ok.push(ok);
    }
    Ok(TransitionReport { k, partitions: parts, matrix, column_ok, mismatches })
}
