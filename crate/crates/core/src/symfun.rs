//! Symmetric functions named by generators of the e, h, p and m families,
//! and their evaluation on finite integer alphabets.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E(usize),
    H(usize),
    P(usize),
    M(Partition),
}

impl Generator {
    pub fn degree(&self) -> usize {
        match self {
            Generator::E(k) | Generator::H(k) | Generator::P(k) => *k,
            Generator::M(l) => l.size(),
        }
    }

    /// Value on the alphabet `xs` (padded with zeros as needed).
    pub fn eval(&self, xs: &[i64]) -> BigInt {
        match self {
            Generator::E(k) => elementary(xs, *k).swap_remove(*k),
            Generator::H(k) => complete(xs, *k).swap_remove(*k),
            Generator::P(0) => BigInt::from(xs.len()),
            Generator::P(k) => xs.iter().map(|&x| BigInt::from(x).pow(*k as u32)).sum(),
            Generator::M(l) => monomial(xs, l),
        }
    }
}

/// `e_0, ..., e_kmax` on the alphabet.
pub fn elementary(xs: &[i64], kmax: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); kmax + 1];
    e[0] = BigInt::one();
    for &x in xs {
        for j in (1..=kmax).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    e
}

/// `h_0, ..., h_kmax` on the alphabet.
pub fn complete(xs: &[i64], kmax: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); kmax + 1];
    h[0] = BigInt::one();
    for &x in xs {
        for j in 1..=kmax {
            let add = &h[j - 1] * x;
            h[j] += add;
        }
    }
    h
}

/// `m_l` on the alphabet, by a pass over the variables that tracks how many
/// parts of each distinct size have been placed so far.
pub fn monomial(xs: &[i64], l: &Partition) -> BigInt {
    let mults = l.multiplicities();
    let radix: Vec<usize> = mults.iter().map(|&(_, c)| c + 1).collect();
    let states: usize = radix.iter().product();
    let encode = |used: &[usize]| used.iter().zip(&radix).rev().fold(0, |acc, (&u, &r)| acc * r + u);
    let decode = |mut s: usize| {
        radix
            .iter()
            .map(|&r| {
                let u = s % r;
                s /= r;
                u
            })
            .collect::<Vec<_>>()
    };
    let mut table = vec![BigInt::zero(); states];
    table[0] = BigInt::one();
    for &x in xs {
        let mut next = table.clone();
        for (s, val) in table.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let mut used = decode(s);
            for (i, &(part, count)) in mults.iter().enumerate() {
                if used[i] < count {
                    used[i] += 1;
                    next[encode(&used)] += val * BigInt::from(x).pow(part as u32);
                    used[i] -= 1;
                }
            }
        }
        table = next;
    }
    table.swap_remove(states - 1)
}

/// A product of generators; the empty product is the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymFunSpec {
    pub factors: Vec<Generator>,
}

impl SymFunSpec {
    pub fn one() -> Self {
        SymFunSpec { factors: Vec::new() }
    }

    pub fn single(g: Generator) -> Self {
        SymFunSpec { factors: vec![g] }
    }

    pub fn e(k: usize) -> Self {
        Self::single(Generator::E(k))
    }

    pub fn h(k: usize) -> Self {
        Self::single(Generator::H(k))
    }

    pub fn p(k: usize) -> Self {
        Self::single(Generator::P(k))
    }

    pub fn m(l: Partition) -> Self {
        Self::single(Generator::M(l))
    }

    pub fn times(mut self, other: &SymFunSpec) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(Generator::degree).sum()
    }

    pub fn eval(&self, xs: &[i64]) -> BigInt {
        self.factors.iter().map(|g| g.eval(xs)).product()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(k) => write!(f, "e{k}"),
            Generator::H(k) => write!(f, "h{k}"),
            Generator::P(k) => write!(f, "p{k}"),
            Generator::M(l) => write!(f, "m{l}"),
        }
    }
}

impl fmt::Display for SymFunSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("*"))
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// `e3`, `h2`, `p4`, `m2,1` or `m(2,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad symmetric function {s:?}"));
        let mut chars = s.chars();
        let basis = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str().trim();
        let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        let index = || rest.parse::<usize>().map_err(|_| bad());
        match basis.to_ascii_lowercase() {
            'e' => Ok(Generator::E(index()?)),
            'h' => Ok(Generator::H(index()?)),
            'p' => Ok(Generator::P(index()?)),
            'm' => Ok(Generator::M(rest.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl FromStr for SymFunSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "1" {
            return Ok(Self::one());
        }
        let factors = s.split('*').map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(SymFunSpec { factors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, part};

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_alphabets() {
        let a = [-1, 0, 1];
        assert_eq!(Generator::P(1).eval(&a), b(0));
        assert_eq!(Generator::E(2).eval(&[0, 1]), b(0));
        assert_eq!(Generator::H(2).eval(&a), b(1));
        assert_eq!(Generator::M(part(&[2, 1])).eval(&[1, 2]), b(2 + 4));
        assert_eq!(Generator::M(part(&[1, 1, 1])).eval(&[1, 2]), b(0));
        assert_eq!(Generator::M(part(&[])).eval(&a), b(1));
    }

    // brute force over exponent vectors
    fn monomial_brute(xs: &[i64], l: &Partition) -> BigInt {
        let n = xs.len();
        let k = l.size();
        let mut total = BigInt::zero();
        let mut exps = vec![0usize; n];
        loop {
            let mut sorted: Vec<usize> = exps.iter().copied().filter(|&e| e > 0).collect();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted == l.parts() {
                total += xs.iter().zip(&exps).map(|(&x, &e)| BigInt::from(x).pow(e as u32)).product::<BigInt>();
            }
            let mut i = 0;
            loop {
                if i == n {
                    return total;
                }
                exps[i] += 1;
                if exps[i] <= k {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn monomial_matches_brute_force() {
        let xs = [2, -1, 3, 0, 1];
        for k in 0..=5 {
            for l in enumerate_partitions(k) {
                assert_eq!(monomial(&xs, &l), monomial_brute(&xs, &l), "{l}");
            }
        }
    }

    #[test]
    fn sums_of_monomials() {
        // h_k = sum of all m_l, e_k = m_(1^k), p_k = m_(k)
        let xs = [3, -2, 0, 1, 5];
        for k in 0..=6 {
            let total: BigInt = enumerate_partitions(k).iter().map(|l| monomial(&xs, l)).sum();
            assert_eq!(Generator::H(k).eval(&xs), total);
            assert_eq!(Generator::E(k).eval(&xs), monomial(&xs, &Partition::column(k)));
            if k > 0 {
                assert_eq!(Generator::P(k).eval(&xs), monomial(&xs, &Partition::row(k)));
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let f: SymFunSpec = "e2*h1".parse().unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.to_string(), "e2*h1");
        assert_eq!("m2,1".parse::<SymFunSpec>().unwrap(), SymFunSpec::m(part(&[2, 1])));
        assert_eq!("m(2,1)".parse::<SymFunSpec>().unwrap(), SymFunSpec::m(part(&[2, 1])));
        assert!("x3".parse::<SymFunSpec>().is_err());
        assert!("h".parse::<SymFunSpec>().is_err());
    }
}
