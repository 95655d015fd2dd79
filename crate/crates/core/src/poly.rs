//! Univariate polynomials and rational functions with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::rational::{q, Q};

/// Polynomial with rational coefficients, stored in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolynomialQ {
    coeffs: Vec<Q>,
}

impl PolynomialQ {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolynomialQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        PolynomialQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `c t^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(Q::one(), 1)
    }

    /// `t (t - 1) ... (t - p)`.
    pub fn falling(p: usize) -> Self {
        (0..=p).fold(Self::constant(Q::one()), |acc, i| &acc * &Self::from_ints(&[-(i as i64), 1]))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_rem(&self, d: &PolynomialQ) -> (PolynomialQ, PolynomialQ) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&s| s >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![Q::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Newton interpolation through the given points (distinct abscissae).
    pub fn interpolate(points: &[(Q, Q)]) -> PolynomialQ {
        let n = points.len();
        let mut table: Vec<Q> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (&points[i].0 - &points[i - level].0);
            }
        }
        let mut result = PolynomialQ::zero();
        for i in (0..n).rev() {
            let shift = PolynomialQ::new(vec![-points[i].0.clone(), Q::one()]);
            result = &(&result * &shift) + &PolynomialQ::constant(table[i].clone());
        }
        result
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients after multiplying by `scale`; panics if not integral.
    fn scaled_ints(&self, scale: &BigInt) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                let v = c * Q::from_integer(scale.clone());
                assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    }

    /// Splits `self = c * P` with `P` integral, primitive and with positive leading coefficient.
    pub fn primitive_part(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let l = self.denominator_lcm();
        let ints = self.scaled_ints(&l);
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Q::new(g, l), prim)
    }

    /// Ascending form such as `-4 + 3/2 t + 1/2 t^2`.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag} {mono}"));
            }
        }
        out
    }

    /// Factored form over the rationals, e.g. `t(t-1)(4t-5)/6`; irreducible
    /// leftovers are printed expanded.
    pub fn factored_string(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (c, prim) = self.primitive_part();
        let f = Factorization::of(&prim);
        let body = f.render(var);
        let numer = c.numer();
        let mut out = String::new();
        if body.is_empty() {
            out.push_str(&numer.to_string());
        } else if numer.is_one() {
            out.push_str(&body);
        } else if (-numer).is_one() {
            out.push('-');
            out.push_str(&body);
        } else {
            out.push_str(&numer.to_string());
            out.push_str(&body);
        }
        if !c.denom().is_one() {
            out.push('/');
            out.push_str(&c.denom().to_string());
        }
        out
    }
}

impl fmt::Display for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl fmt::Debug for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolynomialQ({self})")
    }
}

impl Add for &PolynomialQ {
    type Output = PolynomialQ;
    fn add(self, rhs: &PolynomialQ) -> PolynomialQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolynomialQ {
    type Output = PolynomialQ;
    fn sub(self, rhs: &PolynomialQ) -> PolynomialQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialQ::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolynomialQ {
    type Output = PolynomialQ;
    fn mul(self, rhs: &PolynomialQ) -> PolynomialQ {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialQ::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialQ::new(out)
    }
}

impl Neg for &PolynomialQ {
    type Output = PolynomialQ;
    fn neg(self) -> PolynomialQ {
        PolynomialQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Factorization of a primitive integer polynomial into powers of the variable,
/// `(q^2 x^2 - p^2)` pairs, linear factors `(q x - p)` and an irreducible-over-Q remainder
/// (as far as rational roots are concerned).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub zero_multiplicity: usize,
    /// `(p, q, m)` for `(q^2 x^2 - p^2)^m`, `p, q > 0`.
    pub pairs: Vec<(BigInt, BigInt, usize)>,
    /// `(p, q, m)` for `(q x - p)^m`, `q > 0`.
    pub linear: Vec<(BigInt, BigInt, usize)>,
    /// Remaining factor, ascending; `[1]` when everything split.
    pub rest: Vec<BigInt>,
}

impl Factorization {
    pub fn of(prim: &[BigInt]) -> Factorization {
        let zero_multiplicity = prim.iter().take_while(|c| c.is_zero()).count();
        let mut rest: Vec<BigInt> = prim[zero_multiplicity..].to_vec();
        let mut roots: Vec<(BigInt, BigInt, usize)> = Vec::new();
        for (p, qd) in root_candidates(&rest) {
            let mut mult = 0;
            while rest.len() > 1 {
                match divide_linear(&rest, &p, &qd) {
                    Some(quot) => {
                        rest = quot;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                roots.push((p, qd, mult));
            }
        }
        // pair r with -r
        let mut pairs = Vec::new();
        let mut linear = Vec::new();
        let mut used = vec![0usize; roots.len()];
        for i in 0..roots.len() {
            let (p, qd, m) = &roots[i];
            if p.is_positive() {
                if let Some(j) = roots.iter().position(|(p2, q2, _)| *p2 == -p && q2 == qd) {
                    let k = (*m).min(roots[j].2);
                    pairs.push((p.clone(), qd.clone(), k));
                    used[i] += k;
                    used[j] += k;
                }
            }
        }
        for (i, (p, qd, m)) in roots.iter().enumerate() {
            if *m > used[i] {
                linear.push((p.clone(), qd.clone(), m - used[i]));
            }
        }
        pairs.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
        linear.sort_by(|a, b| (Q::new(a.0.clone(), a.1.clone())).cmp(&Q::new(b.0.clone(), b.1.clone())));
        Factorization { zero_multiplicity, pairs, linear, rest }
    }

    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        let pow = |m: usize| if m > 1 { format!("^{m}") } else { String::new() };
        if self.zero_multiplicity > 0 {
            out.push_str(var);
            out.push_str(&pow(self.zero_multiplicity));
        }
        for (p, qd, m) in &self.pairs {
            let lead = if qd.is_one() { String::new() } else { (qd * qd).to_string() };
            out.push_str(&format!("({lead}{var}^2-{}){}", p * p, pow(*m)));
        }
        for (p, qd, m) in &self.linear {
            let lead = if qd.is_one() { var.to_string() } else { format!("{qd}{var}") };
            let tail = if p.is_negative() { format!("+{}", -p) } else { format!("-{p}") };
            out.push_str(&format!("({lead}{tail}){}", pow(*m)));
        }
        if self.rest.len() > 1 {
            out.push_str(&format!("({})", descending(&self.rest, var)));
        }
        out
    }
}

/// Expanded descending form of an integer polynomial, e.g. `3t^2+17t-34`.
pub fn descending(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let coef = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        out.push_str(&coef);
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Candidate rational roots `p/q` (`q > 0`, lowest terms) of an integer polynomial
/// with nonzero constant term. Divisor enumeration is skipped for coefficients
/// beyond `10^12`, in which case only small integers are tried.
fn root_candidates(c: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    if c.len() < 2 {
        return Vec::new();
    }
    let a0 = c[0].abs().to_u64().filter(|&v| v <= 1_000_000_000_000);
    let an = c[c.len() - 1].abs().to_u64().filter(|&v| v <= 1_000_000_000_000);
    let mut out = Vec::new();
    match (a0, an) {
        (Some(a0), Some(an)) => {
            let ps = divisors(a0);
            let qs = divisors(an);
            for qd in &qs {
                for p in &ps {
                    if p.gcd(qd) == 1 {
                        out.push((BigInt::from(*p), BigInt::from(*qd)));
                        out.push((-BigInt::from(*p), BigInt::from(*qd)));
                    }
                }
            }
        }
        _ => {
            for p in 1..=64i64 {
                out.push((BigInt::from(p), BigInt::one()));
                out.push((BigInt::from(-p), BigInt::one()));
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divides an integer polynomial by `(q x - p)` if the division is exact.
fn divide_linear(c: &[BigInt], p: &BigInt, qd: &BigInt) -> Option<Vec<BigInt>> {
    // synthetic division from the top: c(x) = (q x - p) b(x)
    let n = c.len() - 1;
    let mut b = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (1..=n).rev() {
        let num = &c[k] + &carry;
        if !(&num % qd).is_zero() {
            return None;
        }
        b[k - 1] = num / qd;
        carry = p * &b[k - 1];
    }
    if (&c[0] + &carry).is_zero() {
        Some(b)
    } else {
        None
    }
}

/// Polynomial with integer coefficients, ascending; used for fraction-free
/// determinant computations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        PolyZ { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PolyZ::new(out)
    }

    pub fn sub(&self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        PolyZ::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) - rhs.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyZ {
        PolyZ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Exact quotient; `None` if `d` does not divide `self` over the integers.
    pub fn exact_div(&self, d: &PolyZ) -> Option<PolyZ> {
        let dd = d.degree()?;
        let Some(sd) = self.degree() else {
            return Some(PolyZ::zero());
        };
        if sd < dd {
            return None;
        }
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(PolyZ::new(quot))
        } else {
            None
        }
    }

    pub fn to_q(&self) -> PolynomialQ {
        PolynomialQ::new(self.coeffs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }
}

/// Quotient of integer polynomials, kept in lowest terms with positive
/// leading denominator coefficient and no common integer content.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: PolynomialQ,
    den: PolynomialQ,
}

impl RationalFunctionQ {
    pub fn new(num: PolynomialQ, den: PolynomialQ) -> Result<Self> {
        if den.is_zero() {
            return Err(domain("zero denominator"));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: PolynomialQ) -> Self {
        Self::normalized(p, PolynomialQ::constant(Q::one()))
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(PolynomialQ::constant(c))
    }

    fn normalized(num: PolynomialQ, den: PolynomialQ) -> Self {
        if num.is_zero() {
            return RationalFunctionQ { num, den: PolynomialQ::constant(Q::one()) };
        }
        let g = PolynomialQ::gcd(&num, &den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let l = num.denominator_lcm().lcm(&den.denominator_lcm());
        let ni = num.scaled_ints(&l);
        let di = den.scaled_ints(&l);
        let mut content = ni.iter().chain(di.iter()).fold(BigInt::zero(), |a, c| a.gcd(c));
        if di.last().unwrap().sign() == Sign::Minus {
            content = -content;
        }
        let to_poly = |v: Vec<BigInt>| PolynomialQ::new(v.into_iter().map(|c| Q::from_integer(c / &content)).collect());
        RationalFunctionQ { num: to_poly(ni), den: to_poly(di) }
    }

    pub fn numerator(&self) -> &PolynomialQ {
        &self.num
    }

    pub fn denominator(&self) -> &PolynomialQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, x: &Q) -> Result<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(domain(format!("pole at {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::normalized(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(domain("division by zero rational function"));
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Taylor coefficients at 0 up to `z^kmax`; requires no pole at 0.
    pub fn series(&self, kmax: usize) -> Result<Vec<Q>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(domain("pole at 0"));
        }
        let mut out: Vec<Q> = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.coeffs.len().saturating_sub(1)) {
                acc -= &self.den.coeffs[j] * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Human-readable factored form, e.g. `-2/(N(N^2-1)(N^2-4))`.
    pub fn factored_string(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (cn, pn) = self.num.primitive_part();
        let (cd, pd) = self.den.primitive_part();
        let c = cn / cd;
        let top = Factorization::of(&pn).render(var);
        let bottom = Factorization::of(&pd).render(var);
        let numer = c.numer();
        let mut out = if top.is_empty() {
            numer.to_string()
        } else if numer.is_one() {
            top
        } else if (-numer).is_one() {
            format!("-{top}")
        } else {
            format!("{numer}{top}")
        };
        let dint = c.denom();
        let den_str = match (dint.is_one(), bottom.is_empty()) {
            (true, true) => String::new(),
            (false, true) => dint.to_string(),
            (true, false) => bottom,
            (false, false) => format!("{dint}{bottom}"),
        };
        if !den_str.is_empty() {
            let simple = den_str.chars().all(|ch| ch.is_ascii_digit())
                || den_str == var
                || (den_str.starts_with('(') && den_str.matches('(').count() == 1 && den_str.ends_with(')'));
            if simple {
                out = format!("{out}/{den_str}");
            } else {
                out = format!("{out}/({den_str})");
            }
        }
        out
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQ({})", self.factored_string("z"))
    }
}

/// `prod_{k=1}^{m} (x^2 - k^2)` as a polynomial in `x`.
pub fn squares_product(m: usize) -> PolynomialQ {
    (1..=m).fold(PolynomialQ::constant(Q::one()), |acc, k| {
        &acc * &PolynomialQ::new(vec![-q((k * k) as i64), Q::zero(), Q::one()])
    })
}
