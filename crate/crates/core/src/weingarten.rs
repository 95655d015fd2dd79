//! Haar-unitary correlators: the Gram-matrix route valid for every `N`, the
//! character formula for `N >= n`, `1/N` expansions and closed forms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::characters::{character, contents, hook_data};
use crate::class_expansion::{f_coeffs, top_coeff_f};
use crate::error::{domain, Error, Result};
use crate::linalg::{invert_integer_matrix, polynomial_determinant};
use crate::numbers::{catalan, central_factorial, factorial, stirling2};
use crate::partitions::{enumerate_partitions, Partition};
use crate::perm::{all_permutations, enumerate_snn, IndexTuple, Permutation};
use crate::poly::{squares_product, PolyZ, PolynomialQ, RationalFunctionQ};
use crate::rational::{from_uint, q, Q};

/// Largest basis accepted when building a Gram matrix.
pub const GRAM_MAX_BASIS: usize = 5040;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: usize,
    pub big_n: usize,
    pub basis: Vec<Permutation>,
    pub entries: Vec<Vec<BigInt>>,
}

/// `(N^{#(sigma tau^{-1})})` over `S_N(n)` in reverse lexicographic order.
pub fn gram_matrix(n: usize, big_n: usize) -> Result<GramMatrix> {
    if n == 0 || big_n == 0 {
        return Err(domain("n and N must be positive"));
    }
    if n > 8 {
        return Err(Error::Resource(format!("S({n}) is too large to enumerate")));
    }
    let basis = enumerate_snn(n, big_n);
    if basis.len() > GRAM_MAX_BASIS {
        return Err(Error::Resource(format!("|S_N(n)| = {} exceeds {GRAM_MAX_BASIS}", basis.len())));
    }
    let powers: Vec<BigInt> = (0..=n).map(|k| BigInt::from(big_n).pow(k as u32)).collect();
    let inverses: Vec<Permutation> = basis.iter().map(Permutation::inverse).collect();
    let entries = basis
        .par_iter()
        .map(|s| inverses.iter().map(|ti| powers[s.compose_unchecked(ti).cycle_count()].clone()).collect())
        .collect();
    Ok(GramMatrix { n, big_n, basis, entries })
}

pub fn invert_gram(g: &GramMatrix) -> Result<Vec<Vec<Q>>> {
    invert_integer_matrix(&g.entries)
}

/// Four index tuples of common degree `n` and range `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelatorQuery {
    pub i: IndexTuple,
    pub j: IndexTuple,
    pub iprime: IndexTuple,
    pub jprime: IndexTuple,
}

impl CorrelatorQuery {
    pub fn new(i: IndexTuple, j: IndexTuple, iprime: IndexTuple, jprime: IndexTuple) -> Result<Self> {
        let all = [&i, &j, &iprime, &jprime];
        if all.iter().any(|t| t.degree() != i.degree() || t.range() != i.range()) {
            return Err(domain("index tuples must share degree and range"));
        }
        if i.degree() == 0 {
            return Err(domain("empty index tuples"));
        }
        Ok(CorrelatorQuery { i, j, iprime, jprime })
    }

    /// Builds a query from plain vectors.
    pub fn from_vecs(big_n: usize, i: &[usize], j: &[usize], ip: &[usize], jp: &[usize]) -> Result<Self> {
        Self::new(
            IndexTuple::new(i.to_vec(), big_n)?,
            IndexTuple::new(j.to_vec(), big_n)?,
            IndexTuple::new(ip.to_vec(), big_n)?,
            IndexTuple::new(jp.to_vec(), big_n)?,
        )
    }

    pub fn n(&self) -> usize {
        self.i.degree()
    }

    pub fn big_n(&self) -> usize {
        self.i.range()
    }

    /// The permutation correlator `<u_{1,1} conj(u_{1,p(1)}) ... u_{n,n} conj(u_{n,p(n)})>`.
    pub fn for_permutation(p: &Permutation, big_n: usize) -> Result<Self> {
        let id: Vec<usize> = (1..=p.degree()).collect();
        Self::from_vecs(big_n, &id, &id, &id, &p.one_line())
    }
}

/// Gram inverse for one `(n, N)`, reusable across queries.
#[derive(Clone, Debug)]
pub struct GramInverse {
    pub gram: GramMatrix,
    pub inverse: Vec<Vec<Q>>,
}

impl GramInverse {
    pub fn new(n: usize, big_n: usize) -> Result<Self> {
        let gram = gram_matrix(n, big_n)?;
        let inverse = invert_gram(&gram)?;
        Ok(GramInverse { gram, inverse })
    }

    /// `sum_{sigma, tau} [i = i' sigma][j = j' tau] (G^{-1})_{sigma, tau}`.
    pub fn correlator(&self, q: &CorrelatorQuery) -> Result<Q> {
        if q.n() != self.gram.n || q.big_n() != self.gram.big_n {
            return Err(domain("query does not match the Gram matrix"));
        }
        let rows: Vec<usize> = self.aligned(&q.i, &q.iprime);
        let cols: Vec<usize> = self.aligned(&q.j, &q.jprime);
        let mut acc = Q::zero();
        for &r in &rows {
            for &c in &cols {
                acc += &self.inverse[r][c];
            }
        }
        Ok(acc)
    }

    fn aligned(&self, a: &IndexTuple, b: &IndexTuple) -> Vec<usize> {
        (0..self.gram.basis.len()).filter(|&k| a.matches(b, &self.gram.basis[k])).collect()
    }
}

/// Caches Gram inverses by `(n, N)`.
#[derive(Default)]
pub struct WeingartenEngine {
    cache: Mutex<HashMap<(usize, usize), Arc<GramInverse>>>,
}

impl WeingartenEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn inverse(&self, n: usize, big_n: usize) -> Result<Arc<GramInverse>> {
        if let Some(g) = self.cache.lock().unwrap().get(&(n, big_n)) {
            return Ok(g.clone());
        }
        let g = Arc::new(GramInverse::new(n, big_n)?);
        self.cache.lock().unwrap().insert((n, big_n), g.clone());
        Ok(g)
    }

    pub fn correlator(&self, q: &CorrelatorQuery) -> Result<Q> {
        self.inverse(q.n(), q.big_n())?.correlator(q)
    }
}

/// Correlator through the Gram matrix over `S_N(n)`; valid for every `N >= 1`.
pub fn general_correlator(q: &CorrelatorQuery) -> Result<Q> {
    GramInverse::new(q.n(), q.big_n())?.correlator(q)
}

/// `sum_l chi^l_nu / (H_l prod_cells (N + c))` for a permutation of cycle type `nu`; needs `N >= n`.
pub fn permutation_correlator(p: &Permutation, big_n: usize) -> Result<Q> {
    let n = p.degree();
    if big_n < n {
        return Err(domain(format!(
            "the character formula needs N >= n (got N = {big_n}, n = {n}); use the Gram-matrix route"
        )));
    }
    Ok(weingarten_value(&p.cycle_type(), big_n))
}

/// Weingarten function of cycle type `nu` at integer `N >= |nu|`.
pub fn weingarten_value(nu: &Partition, big_n: usize) -> Q {
    let x = q(big_n as i64);
    enumerate_partitions(nu.size())
        .into_par_iter()
        .map(|l| {
            let chi = character(&l, nu).expect("sizes agree");
            if chi.is_zero() {
                return Q::zero();
            }
            let den = contents(&l)
                .values
                .iter()
                .fold(from_uint(&hook_data(&l).hook_product), |acc, &c| acc * (&x + q(c)));
            Q::from_integer(chi) / den
        })
        .reduce(Q::zero, |a, b| a + b)
}

/// The Weingarten function of reduced type `m` in `S(n)` as a rational function of `N`.
pub fn weingarten_symbolic(m: &Partition, n: usize) -> Result<RationalFunctionQ> {
    let nu = m.inflate(n)?;
    let mut acc = RationalFunctionQ::constant(Q::zero());
    for l in enumerate_partitions(n) {
        let chi = character(&l, &nu)?;
        if chi.is_zero() {
            continue;
        }
        let den = contents(&l).values.iter().fold(
            PolynomialQ::constant(from_uint(&hook_data(&l).hook_product)),
            |acc, &c| &acc * &PolynomialQ::new(vec![q(c), Q::one()]),
        );
        let term = RationalFunctionQ::new(PolynomialQ::constant(Q::from_integer(chi)), den)?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Correlator via the sum over all `sigma, tau in S(n)` aligning the indices,
/// weighted by the Weingarten function of `sigma tau^{-1}`; needs `N >= n`.
pub fn wick_decompose(q: &CorrelatorQuery) -> Result<Q> {
    wick_with(q, |nu, big_n| Ok(weingarten_value(nu, big_n)))
}

/// As [`wick_decompose`], with the Weingarten values taken from the symbolic
/// rational functions evaluated at `N`.
pub fn wick_decompose_symbolic(q: &CorrelatorQuery) -> Result<Q> {
    let n = q.n();
    wick_with(q, |nu, big_n| weingarten_symbolic(&nu.reduce(), n)?.eval(&crate::rational::q(big_n as i64)))
}

fn wick_with(q: &CorrelatorQuery, wg: impl Fn(&Partition, usize) -> Result<Q>) -> Result<Q> {
    let (n, big_n) = (q.n(), q.big_n());
    if big_n < n {
        return Err(domain(format!("N = {big_n} < n = {n}; use the Gram-matrix route")));
    }
    let perms = all_permutations(n);
    let sigmas: Vec<&Permutation> = perms.iter().filter(|s| q.i.matches(&q.iprime, s)).collect();
    let taus: Vec<&Permutation> = perms.iter().filter(|t| q.j.matches(&q.jprime, t)).collect();
    let mut counts: HashMap<Partition, u64> = HashMap::new();
    for s in &sigmas {
        for t in &taus {
            *counts.entry(s.compose_unchecked(&t.inverse()).cycle_type()).or_default() += 1;
        }
    }
    let mut acc = Q::zero();
    for (nu, c) in counts {
        acc += wg(&nu, big_n)? * Q::from_integer(BigInt::from(c));
    }
    Ok(acc)
}

/// The correlator as a rational function of `N`, valid for `N >= n`: the
/// Weingarten functions of `sigma tau^{-1}` summed over aligning pairs.
pub fn correlator_symbolic(q: &CorrelatorQuery) -> Result<RationalFunctionQ> {
    let n = q.n();
    let perms = all_permutations(n);
    let sigmas: Vec<&Permutation> = perms.iter().filter(|s| q.i.matches(&q.iprime, s)).collect();
    let taus: Vec<&Permutation> = perms.iter().filter(|t| q.j.matches(&q.jprime, t)).collect();
    let mut counts: HashMap<Partition, u64> = HashMap::new();
    for s in &sigmas {
        for t in &taus {
            *counts.entry(s.compose_unchecked(&t.inverse()).reduced_cycle_type()).or_default() += 1;
        }
    }
    let mut acc = RationalFunctionQ::constant(Q::zero());
    for (m, c) in counts {
        let w = weingarten_symbolic(&m, n)?;
        acc = acc.add(&w.mul(&RationalFunctionQ::constant(q_from(c))));
    }
    Ok(acc)
}

fn q_from(c: u64) -> Q {
    Q::from_integer(BigInt::from(c))
}

/// `F^{|m| + 2g}_m(n)` for `g = 0..=gmax`: the coefficients of
/// `(-1)^{|m|} N^{n + |m|} Wg = sum_g F^{|m|+2g}_m(n) N^{-2g}`.
pub fn expansion_series(m: &Partition, n: usize, gmax: usize) -> Result<Vec<Q>> {
    let k0 = m.size();
    let coeffs = f_coeffs(m, n, k0 + 2 * gmax)?;
    Ok((0..=gmax).map(|g| coeffs[k0 + 2 * g].clone()).collect())
}

/// Taylor coefficients in `x = 1/N` of a rational function of `N` that is
/// bounded at infinity.
pub fn series_at_infinity(r: &RationalFunctionQ, kmax: usize) -> Result<Vec<Q>> {
    let num = r.numerator();
    let den = r.denominator();
    let (dn, dd) = (num.degree().unwrap_or(0), den.degree().unwrap_or(0));
    if r.is_zero() {
        return Ok(vec![Q::zero(); kmax + 1]);
    }
    if dn > dd {
        return Err(domain("rational function has a pole at infinity"));
    }
    // P(1/x) = x^{-dn} rev(P)(x)
    let rev = |p: &PolynomialQ, d: usize| PolynomialQ::new((0..=d).map(|i| p.coeff(d - i)).collect());
    let shifted = &PolynomialQ::monomial(Q::one(), dd - dn) * &rev(num, dn);
    RationalFunctionQ::new(shifted, rev(den, dd))?.series(kmax)
}

/// `N^{-n} R(-1/N)` for a rational function `R(z)`: turns a generating function
/// of the class coefficients into the corresponding correlator in `N`.
pub fn correlator_from_generating_function(r: &RationalFunctionQ, n: usize) -> Result<RationalFunctionQ> {
    let flip = |p: &PolynomialQ| -> (PolynomialQ, usize) {
        // p(-1/N) = N^{-d} sum_i p_i (-1)^i N^{d-i}
        let d = p.degree().unwrap_or(0);
        let coeffs = (0..=d)
            .map(|k| {
                let i = d - k;
                let c = p.coeff(i);
                if i % 2 == 1 { -c } else { c }
            })
            .collect();
        (PolynomialQ::new(coeffs), d)
    };
    let (pn, dn) = flip(r.numerator());
    let (pd, dd) = flip(r.denominator());
    // result = N^{dd - dn - n} pn / pd
    let exp = dd as i64 - dn as i64 - n as i64;
    let (num, den) = if exp >= 0 {
        (&pn * &PolynomialQ::monomial(Q::one(), exp as usize), pd)
    } else {
        (pn, &pd * &PolynomialQ::monomial(Q::one(), (-exp) as usize))
    };
    RationalFunctionQ::new(num, den)
}

/// `(-1)^{n-1} Cat_{n-1} / (N (N^2 - 1) ... (N^2 - (n-1)^2))`.
pub fn cyclic_closed_form(n: usize) -> Result<RationalFunctionQ> {
    if n < 2 {
        return Err(domain("the cyclic closed form needs n >= 2"));
    }
    let c = from_uint(&catalan(n - 1));
    let c = if (n - 1).is_multiple_of(2) { c } else { -c };
    RationalFunctionQ::new(PolynomialQ::constant(c), &PolynomialQ::var() * &squares_product(n - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFixedPoint {
    pub n: usize,
    /// `(j, a_j)` for `j = r, r + 2, ..., n - 4`.
    pub a: Vec<(usize, Q)>,
    /// The generating function of the class coefficients of the `(n-1)`-cycles, in `z`.
    pub generating_function: RationalFunctionQ,
}

/// The generating function `sum_k F^k_{(n-2)}(n) z^k` assembled from the trivial,
/// alternating and almost-hook contributions.
pub fn one_fixed_point_gf(n: usize) -> Result<OneFixedPoint> {
    if n < 4 {
        return Err(domain("needs n >= 4"));
    }
    let r = n % 2;
    let nf = from_uint(&factorial(n));
    let ks: Vec<usize> = (r..=n - 4).step_by(2).collect();
    let rhs: Vec<Q> = ks
        .iter()
        .map(|&k| -q(2) * from_uint(&stirling2(n - 1 + k, n - 1)) / &nf)
        .collect();
    // unit lower-triangular: row k, column j has T(n - 3 + (k - j)/2, n - 3)
    let mut a: Vec<Q> = Vec::with_capacity(ks.len());
    for (row, b) in rhs.iter().enumerate() {
        let mut acc = b.clone();
        for (col, aj) in a.iter().enumerate() {
            let g = row - col;
            acc -= from_uint(&central_factorial(n - 3 + g, n - 3)) * aj;
        }
        a.push(acc);
    }
    let prod = |sign: i64| {
        (1..n).fold(PolynomialQ::constant(nf.clone()), |acc, i| {
            &acc * &PolynomialQ::new(vec![Q::one(), q(sign * i as i64)])
        })
    };
    let sign_r = if r == 0 { Q::one() } else { -Q::one() };
    let alt = RationalFunctionQ::new(PolynomialQ::constant(sign_r), prod(1))?;
    let triv = RationalFunctionQ::new(PolynomialQ::constant(Q::one()), prod(-1))?;
    let mut numer = PolynomialQ::zero();
    for (&k, ak) in ks.iter().zip(&a) {
        numer = &numer + &PolynomialQ::monomial(ak.clone(), k);
    }
    let den = (1..=n - 3).fold(PolynomialQ::constant(Q::one()), |acc, i| {
        &acc * &PolynomialQ::new(vec![Q::one(), Q::zero(), -q((i * i) as i64)])
    });
    let hooks = RationalFunctionQ::new(numer, den)?;
    let gf = alt.add(&triv).add(&hooks);
    Ok(OneFixedPoint { n, a: ks.into_iter().zip(a).collect(), generating_function: gf })
}

#[derive(Clone, Debug)]
pub struct GramDeterminantReport {
    pub n: usize,
    /// Product over standard tableaux of the content factors.
    pub by_tableaux: PolynomialQ,
    /// Direct symbolic determinant, when computed (n <= 4).
    pub by_elimination: Option<PolynomialQ>,
    /// Multiplicity of each root `-c`, keyed by content `c`.
    pub root_multiplicities: Vec<(i64, BigUint)>,
    /// `a_0` (power of `z`) followed by `a_k` for `(z^2 - k^2)^{a_k}`.
    pub exponents: Vec<BigUint>,
    pub total_degree: usize,
}

impl GramDeterminantReport {
    pub fn routes_agree(&self) -> Option<bool> {
        self.by_elimination.as_ref().map(|d| *d == self.by_tableaux)
    }

    /// `sum_k a_k`, reported for comparison with the literature.
    pub fn exponent_sum(&self) -> BigUint {
        self.exponents.iter().sum()
    }

    pub fn factored(&self) -> String {
        self.by_tableaux.factored_string("z")
    }
}

/// Standard Young tableaux of shape `l`, each given as the content of the cell holding `1, ..., n`.
pub fn tableau_content_sequences(l: &Partition) -> Vec<Vec<i64>> {
    fn go(shape: &[usize], filled: &mut Vec<usize>, seq: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let total: usize = shape.iter().sum();
        if seq.len() == total {
            out.push(seq.clone());
            return;
        }
        for row in 0..shape.len() {
            let col = filled[row];
            if col < shape[row] && (row == 0 || filled[row - 1] > col) {
                filled[row] += 1;
                seq.push(col as i64 - row as i64);
                go(shape, filled, seq, out);
                seq.pop();
                filled[row] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(l.parts(), &mut vec![0; l.length()], &mut Vec::new(), &mut out);
    out
}

/// `det G(z)` for the full `n! x n!` Gram matrix `(z^{#(sigma tau^{-1})})`.
pub fn gram_determinant(n: usize) -> Result<GramDeterminantReport> {
    if n == 0 || n > 5 {
        return Err(Error::Resource(format!("gram determinant supported for 1 <= n <= 5, got {n}")));
    }
    let mut mult: HashMap<i64, BigUint> = HashMap::new();
    for l in enumerate_partitions(n) {
        let dim = hook_data(&l).dimension;
        for seq in tableau_content_sequences(&l) {
            for c in seq {
                *mult.entry(c).or_default() += &dim;
            }
        }
    }
    let mut roots: Vec<(i64, BigUint)> = mult.into_iter().collect();
    roots.sort();
    let mut by_tableaux = PolynomialQ::constant(Q::one());
    for (c, m) in &roots {
        let m: usize = m.try_into().map_err(|_| Error::Resource("multiplicity overflow".into()))?;
        let lin = PolynomialQ::new(vec![q(*c), Q::one()]);
        for _ in 0..m {
            by_tableaux = &by_tableaux * &lin;
        }
    }
    let get = |c: i64| roots.iter().find(|(k, _)| *k == c).map(|(_, m)| m.clone()).unwrap_or_default();
    let exponents: Vec<BigUint> = (0..n as i64).map(get).collect();
    let by_elimination = if n <= 4 {
        let perms = all_permutations(n);
        let matrix = perms
            .iter()
            .map(|s| perms.iter().map(|t| PolyZ::monomial(s.compose_unchecked(&t.inverse()).cycle_count())).collect())
            .collect();
        Some(polynomial_determinant(matrix)?.to_q())
    } else {
        None
    };
    let total_degree = by_tableaux.degree().unwrap_or(0);
    Ok(GramDeterminantReport { n, by_tableaux, by_elimination, root_multiplicities: roots, exponents, total_degree })
}

/// Leading coefficient `prod_i Cat_{m_i}` of the `1/N` expansion.
pub fn first_order(m: &Partition) -> BigUint {
    top_coeff_f(m)
}

/// Signed leading order used by callers that compare against correlators:
/// `(-1)^{|m|} prod Cat`.
pub fn first_order_signed(m: &Partition) -> Q {
    let v = from_uint(&first_order(m));
    if m.size() % 2 == 1 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;
    use crate::perm::canonical_permutation;
    use crate::rational::frac;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_gram_matrices() {
        assert_eq!(gram_matrix(1, 5).unwrap().entries, vec![vec![big(5)]]);
        assert_eq!(gram_matrix(2, 1).unwrap().entries, vec![vec![big(1)]]);
        let g = gram_matrix(2, 3).unwrap();
        assert_eq!(g.entries, vec![vec![big(9), big(3)], vec![big(3), big(9)]]);
        let inv = invert_gram(&g).unwrap();
        assert_eq!(inv[0][0], frac(1, 8));
        assert_eq!(inv[0][1], frac(-1, 24));
        assert_eq!(gram_matrix(3, 2).unwrap().basis.len(), 5);
    }

    #[test]
    fn gram_inverse_is_exact() {
        let g = gram_matrix(3, 3).unwrap();
        let inv = invert_gram(&g).unwrap();
        let m = g.basis.len();
        for i in 0..m {
            for j in 0..m {
                let s: Q = (0..m).map(|k| Q::from_integer(g.entries[i][k].clone()) * &inv[k][j]).sum();
                assert_eq!(s, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn two_point_values() {
        for big_n in 2..=6i64 {
            let diag = CorrelatorQuery::from_vecs(big_n as usize, &[1, 2], &[1, 2], &[1, 2], &[1, 2]).unwrap();
            assert_eq!(general_correlator(&diag).unwrap(), frac(1, big_n * big_n - 1));
            let swap = Permutation::from_one_line(&[2, 1]).unwrap();
            assert_eq!(permutation_correlator(&swap, big_n as usize).unwrap(), frac(-1, big_n * (big_n * big_n - 1)));
        }
        let q1 = CorrelatorQuery::from_vecs(4, &[2], &[3], &[2], &[3]).unwrap();
        assert_eq!(general_correlator(&q1).unwrap(), frac(1, 4));
        let unstable = CorrelatorQuery::from_vecs(1, &[1, 1], &[1, 1], &[1, 1], &[1, 1]).unwrap();
        assert_eq!(general_correlator(&unstable).unwrap(), q(1));
    }

    #[test]
    fn identity_of_three() {
        for big_n in 3..=7i64 {
            let expected = frac(big_n * big_n - 2, big_n * (big_n * big_n - 1) * (big_n * big_n - 4));
            assert_eq!(permutation_correlator(&Permutation::identity(3), big_n as usize).unwrap(), expected);
        }
        assert!(permutation_correlator(&Permutation::identity(3), 2).is_err());
    }

    #[test]
    fn cyclic_forms() {
        assert_eq!(cyclic_closed_form(2).unwrap().factored_string("N"), "-1/(N(N^2-1))");
        assert_eq!(cyclic_closed_form(3).unwrap().factored_string("N"), "2/(N(N^2-1)(N^2-4))");
        assert_eq!(cyclic_closed_form(4).unwrap().eval(&q(4)).unwrap(), frac(-1, 1008));
        let full = canonical_permutation(&part(&[3]), 4).unwrap();
        assert_eq!(permutation_correlator(&full, 4).unwrap(), frac(-1, 1008));
    }

    #[test]
    fn one_fixed_point_at_six() {
        let res = one_fixed_point_gf(6).unwrap();
        assert_eq!(res.a, vec![(0, frac(-1, 360)), (2, frac(-7, 20))]);
        let gf = &res.generating_function;
        let expected_num = PolynomialQ::from_ints(&[0, 0, 0, 0, 14, 0, -140]);
        let expected_den = (1..=5).fold(PolynomialQ::constant(q(1)), |acc, k| {
            &acc * &PolynomialQ::from_ints(&[1, 0, -(k * k)])
        });
        assert_eq!(*gf, RationalFunctionQ::new(expected_num, expected_den).unwrap());
        let s = gf.series(10).unwrap();
        assert_eq!([s[4].clone(), s[6].clone(), s[8].clone(), s[10].clone()], [q(14), q(630), q(20328), q(580580)]);
        let corr = correlator_from_generating_function(gf, 6).unwrap();
        assert_eq!(corr.factored_string("N"), "14(N^2-10)/(N^2(N^2-1)(N^2-4)(N^2-9)(N^2-16)(N^2-25))");
    }

    #[test]
    fn symbolic_weingarten_matches_numeric() {
        for n in 1..=5 {
            for m in crate::partitions::partitions_of_weight_at_most(n) {
                let r = weingarten_symbolic(&m, n).unwrap();
                let nu = m.inflate(n).unwrap();
                for big_n in n..=n + 2 {
                    assert_eq!(r.eval(&q(big_n as i64)).unwrap(), weingarten_value(&nu, big_n));
                }
            }
        }
    }

    #[test]
    fn series_matches_closed_form_at_infinity() {
        for n in 2..=5 {
            for m in crate::partitions::partitions_of_weight_at_most(n) {
                let k = m.size();
                let r = weingarten_symbolic(&m, n).unwrap();
                let scale = &PolynomialQ::monomial(if k % 2 == 0 { q(1) } else { q(-1) }, n + k);
                let scaled = r.mul(&RationalFunctionQ::from_poly(scale.clone()));
                let at_inf = series_at_infinity(&scaled, 6).unwrap();
                let series = expansion_series(&m, n, 3).unwrap();
                for g in 0..=3 {
                    assert_eq!(at_inf[2 * g], series[g], "m={m} n={n} g={g}");
                    assert!(at_inf.get(2 * g + 1).is_none_or(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn gram_determinants() {
        let two = gram_determinant(2).unwrap();
        assert_eq!(two.by_tableaux, PolynomialQ::from_ints(&[0, 0, -1, 0, 1]));
        assert_eq!(two.routes_agree(), Some(true));
        assert_eq!(two.exponents, vec![BigUint::from(2u32), BigUint::from(1u32)]);
        for n in 1..=4 {
            let rep = gram_determinant(n).unwrap();
            assert_eq!(rep.routes_agree(), Some(true), "n = {n}");
            assert_eq!(BigUint::from(rep.total_degree), BigUint::from(n) * factorial(n));
        }
    }

    #[test]
    fn first_orders() {
        assert_eq!(first_order(&part(&[1, 1])), BigUint::one());
        assert_eq!(first_order(&part(&[2])), BigUint::from(2u32));
        assert_eq!(first_order(&part(&[3, 1])), BigUint::from(5u32));
        assert_eq!(first_order_signed(&part(&[1])), q(-1));
    }

    #[test]
    fn symbolic_correlator() {
        let cq = CorrelatorQuery::from_vecs(5, &[1, 2, 3], &[1, 2, 3], &[1, 2, 3], &[2, 3, 1]).unwrap();
        let r = correlator_symbolic(&cq).unwrap();
        assert_eq!(r.factored_string("N"), "2/(N(N^2-1)(N^2-4))");
        assert_eq!(r.eval(&q(5)).unwrap(), general_correlator(&cq).unwrap());
        assert_eq!(general_correlator(&cq).unwrap(), frac(1, 1260));
        let cq2 = CorrelatorQuery::from_vecs(4, &[1, 1], &[1, 2], &[1, 1], &[2, 1]).unwrap();
        let r2 = correlator_symbolic(&cq2).unwrap();
        assert_eq!(r2.eval(&q(4)).unwrap(), general_correlator(&cq2).unwrap());
    }

    #[test]
    fn engine_caches() {
        let e = WeingartenEngine::new();
        let q1 = CorrelatorQuery::from_vecs(3, &[1, 2], &[1, 2], &[1, 2], &[1, 2]).unwrap();
        assert_eq!(e.correlator(&q1).unwrap(), frac(1, 8));
        assert!(Arc::ptr_eq(&e.inverse(2, 3).unwrap(), &e.inverse(2, 3).unwrap()));
        let bad = CorrelatorQuery::from_vecs(3, &[1, 2], &[1, 2], &[1, 2], &[1, 2]).unwrap();
        assert!(e.inverse(3, 3).unwrap().correlator(&bad).is_err());
    }
}
