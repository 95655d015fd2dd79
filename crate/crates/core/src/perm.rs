//! Permutations of `{1..n}` stored in one-line notation.
//!
//! Composition is right-to-left: `(a * b)(k) = a(b(k))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{domain, Error, Result};
use crate::numbers::factorial;
use crate::partitions::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// One-line notation with entries `1..=n`.
    pub fn from_one_line(word: &[usize]) -> Result<Self> {
        let n = word.len();
        if n > u8::MAX as usize {
            return Err(domain(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &w in word {
            if w == 0 || w > n || seen[w - 1] {
                return Err(domain(format!("{word:?} is not a permutation of 1..{n}")));
            }
            seen[w - 1] = true;
        }
        Ok(Permutation { images: word.iter().map(|&w| (w - 1) as u8).collect() })
    }

    /// Builds a permutation of degree `n` from disjoint cycles given with 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (idx, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || used[x - 1] {
                    return Err(domain(format!("bad cycle {cycle:?} for degree {n}")));
                }
                used[x - 1] = true;
                let y = cycle[(idx + 1) % cycle.len()];
                images[x - 1] = (y - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition `(a, b)` in `S(n)`, 1-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `self(k)` for `1 <= k <= n`.
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&b| self.images[b as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// Disjoint cycles (1-based), including fixed points, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn reduced_cycle_type(&self) -> Partition {
        self.cycle_type().reduce()
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if !seen[start] {
                count += 1;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = self.images[x] as usize;
                }
            }
        }
        count
    }

    /// Minimal number of transpositions needed to write `self`: `n - #cycles`.
    pub fn transposition_distance(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// Points moved by `self`, 1-based and increasing.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&k| self.image(k) != k).collect()
    }

    /// The image under `S(n) -> S(n + 1)`, fixing `n + 1`.
    pub fn embed(&self) -> Permutation {
        let mut images = self.images.clone();
        images.push(self.degree() as u8);
        Permutation { images }
    }

    /// Length of the longest strictly decreasing subsequence of the one-line word.
    ///
    /// Patience sorting on negated values: pile tops stay strictly increasing, so each
    /// card goes on the leftmost pile whose top is not smaller.
    pub fn lds_length(&self) -> usize {
        let mut tops: Vec<i32> = Vec::new();
        for &x in &self.images {
            let v = -(x as i32);
            let pos = tops.partition_point(|&t| t < v);
            if pos == tops.len() {
                tops.push(v);
            } else {
                tops[pos] = v;
            }
        }
        tops.len()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", strs.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses one-line `[2,3,1,5,4]` or cycle notation `(1 2 3)(4 5)`. Cycle notation
/// needs a degree; [`parse_permutation`] takes it explicitly, `FromStr` uses the
/// largest point mentioned.
pub fn parse_permutation(s: &str, degree: Option<usize>) -> Result<Permutation> {
    let s = s.trim();
    let err = |m: &str| Error::Parse(format!("{m}: {s:?}"));
    if s.starts_with('[') {
        let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| err("unbalanced brackets"))?;
        let word = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| err("bad entry")))
            .collect::<Result<Vec<_>>>()?;
        let p = Permutation::from_one_line(&word).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(n) = degree {
            if n != p.degree() {
                return Err(err("degree does not match"));
            }
        }
        return Ok(p);
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
        let close = open.find(')').ok_or_else(|| err("expected ')'"))?;
        let cycle = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| err("bad point")))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    let max = cycles.iter().flatten().copied().max().unwrap_or(0);
    let n = degree.unwrap_or(max);
    if max > n {
        return Err(err("point exceeds degree"));
    }
    Permutation::from_cycles(n, &cycles).map_err(|e| Error::Parse(e.to_string()))
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s, None)
    }
}

/// A function `{1..n} -> {1..N}`, stored as its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexTuple {
    values: Vec<usize>,
    range: usize,
}

impl IndexTuple {
    pub fn new(values: Vec<usize>, range: usize) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v == 0 || v > range) {
            return Err(domain(format!("index {v} outside 1..={range}")));
        }
        Ok(IndexTuple { values, range })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn degree(&self) -> usize {
        self.values.len()
    }

    pub fn range(&self) -> usize {
        self.range
    }

    /// The Iverson bracket `[self = other o sigma]`, i.e. `self(k) = other(sigma(k))` for all `k`.
    pub fn matches(&self, other: &IndexTuple, sigma: &Permutation) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(k, &v)| other.values[sigma.raw()[k] as usize] == v)
    }

    /// Every tuple in `[range]^[n]`, lexicographically.
    pub fn all(n: usize, range: usize) -> Vec<IndexTuple> {
        let mut out = Vec::new();
        let mut cur = vec![1; n];
        loop {
            out.push(IndexTuple { values: cur.clone(), range });
            let mut pos = n;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if cur[pos] < range {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = 1;
            }
        }
    }
}

/// All of `S(n)` in lexicographic order of one-line words.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut word: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![Permutation { images: word.clone() }];
    // standard next-permutation
    loop {
        let Some(i) = (1..n).rev().find(|&i| word[i - 1] < word[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| word[j] > word[i - 1]).expect("pivot exists");
        word.swap(i - 1, j);
        word[i..].reverse();
        out.push(Permutation { images: word.clone() });
    }
}

/// Reverse lexicographic comparison used for the Gram-matrix basis: the one-line
/// words are read right to left and the larger reversed word comes first, which
/// puts the identity first.
pub fn revlex_cmp(a: &Permutation, b: &Permutation) -> Ordering {
    b.images.iter().rev().cmp(a.images.iter().rev())
}

/// `S_N(n)`: permutations of `S(n)` with no decreasing subsequence of length `N + 1`,
/// in reverse lexicographic order.
pub fn enumerate_snn(n: usize, big_n: usize) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = all_permutations(n)
        .into_iter()
        .filter(|p| p.lds_length() <= big_n)
        .collect();
    out.sort_by(revlex_cmp);
    out
}

/// `sigma_mu` in `S(n)`: consecutive cycles of lengths `mu_1 + 1, mu_2 + 1, ...`, rest fixed.
pub fn canonical_permutation(m: &Partition, n: usize) -> Result<Permutation> {
    if m.weight() > n {
        return Err(domain(format!("wt({m}) = {} exceeds n = {n}", m.weight())));
    }
    let mut start = 1;
    let mut cycles = Vec::new();
    for &p in m.parts() {
        cycles.push((start..=start + p).collect::<Vec<_>>());
        start += p + 1;
    }
    Permutation::from_cycles(n, &cycles)
}

/// `|C_m(n)| = n! / z_nu` with `nu` the inflation of `m`; zero when `wt(m) > n`.
pub fn class_size(m: &Partition, n: usize) -> BigUint {
    match m.inflate(n) {
        Ok(nu) => factorial(n) / nu.centralizer_order(),
        Err(_) => BigUint::from(0u32),
    }
}

/// Every permutation of `S(n)` with reduced cycle type `m`.
pub fn enumerate_class(m: &Partition, n: usize) -> Vec<Permutation> {
    if m.weight() > n {
        return Vec::new();
    }
    all_permutations(n)
        .into_iter()
        .filter(|p| p.reduced_cycle_type() == *m)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::catalan;
    use crate::partitions::{part, partitions_of_weight_at_most};

    fn p(word: &[usize]) -> Permutation {
        Permutation::from_one_line(word).unwrap()
    }

    #[test]
    fn composition_laws() {
        let t = p(&[2, 1]);
        assert_eq!(t.compose(&t).unwrap(), Permutation::identity(2));
        let b = p(&[3, 1, 2, 4]);
        assert_eq!(Permutation::identity(4).compose(&b).unwrap(), b);
        let c = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(c.inverse(), Permutation::from_cycles(3, &[vec![1, 3, 2]]).unwrap());
        assert!(matches!(t.compose(&b), Err(Error::DegreeMismatch { .. })));
        // right-to-left: (1,2)(2,3) = (1,2,3)
        let prod = Permutation::transposition(3, 1, 2).compose(&Permutation::transposition(3, 2, 3)).unwrap();
        assert_eq!(prod, c);
    }

    #[test]
    fn cycle_data() {
        let id = Permutation::identity(5);
        assert_eq!(id.cycle_type(), part(&[1, 1, 1, 1, 1]));
        assert_eq!(id.reduced_cycle_type(), part(&[]));
        let s = Permutation::from_cycles(9, &[vec![1, 2, 3, 4], vec![5, 6, 7], vec![8, 9]]).unwrap();
        assert_eq!(s.reduced_cycle_type(), part(&[3, 2, 1]));
        let t = Permutation::transposition(5, 2, 4);
        assert_eq!(t.reduced_cycle_type(), part(&[1]));
        assert_eq!(t.support(), vec![2, 4]);
        assert_eq!(t.cycle_count(), 4);
    }

    #[test]
    fn canonical() {
        let s = canonical_permutation(&part(&[3, 2, 1]), 9).unwrap();
        assert_eq!(s, Permutation::from_cycles(9, &[vec![1, 2, 3, 4], vec![5, 6, 7], vec![8, 9]]).unwrap());
        assert_eq!(canonical_permutation(&part(&[]), 4).unwrap(), Permutation::identity(4));
        let full = canonical_permutation(&part(&[4]), 5).unwrap();
        assert_eq!(full, Permutation::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap());
        assert!(canonical_permutation(&part(&[2]), 2).is_err());
    }

    fn lds_brute(word: &[usize]) -> usize {
        let n = word.len();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| word[i]).collect();
            if sub.windows(2).all(|w| w[0] > w[1]) {
                best = best.max(sub.len());
            }
        }
        best
    }

    #[test]
    fn lds() {
        assert_eq!(Permutation::identity(6).lds_length(), 1);
        assert_eq!(p(&[5, 4, 3, 2, 1]).lds_length(), 5);
        assert_eq!(p(&[2, 4, 1, 3]).lds_length(), 2);
        for n in 1..=7 {
            for q in all_permutations(n) {
                assert_eq!(q.lds_length(), lds_brute(&q.one_line()), "{q}");
            }
        }
    }

    #[test]
    fn baik_rains_sets() {
        assert_eq!(enumerate_snn(2, 1), vec![Permutation::identity(2)]);
        assert_eq!(enumerate_snn(4, 4).len(), 24);
        assert_eq!(enumerate_snn(4, 7).len(), 24);
        assert_eq!(BigUint::from(enumerate_snn(6, 2).len()), catalan(6));
        for n in 1..=7 {
            let mut prev = 0;
            for big_n in 1..=n + 1 {
                let s = enumerate_snn(n, big_n);
                assert!(s.len() >= prev);
                assert_eq!(s[0], Permutation::identity(n));
                prev = s.len();
            }
            assert_eq!(BigUint::from(prev), factorial(n));
        }
    }

    #[test]
    fn revlex_puts_identity_first() {
        let s = enumerate_snn(3, 3);
        assert_eq!(s[0], Permutation::identity(3));
        assert!(s.windows(2).all(|w| revlex_cmp(&w[0], &w[1]) == Ordering::Less));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&part(&[1]), 4), BigUint::from(6u32));
        assert_eq!(class_size(&part(&[3]), 4), BigUint::from(6u32));
        assert_eq!(class_size(&part(&[2]), 2), BigUint::from(0u32));
        assert_eq!(enumerate_class(&part(&[1]), 4).len(), 6);
        for n in 1..=9 {
            let total: BigUint = partitions_of_weight_at_most(n).iter().map(|m| class_size(m, n)).sum();
            assert_eq!(total, factorial(n));
        }
        for n in 1..=6 {
            for m in partitions_of_weight_at_most(n) {
                assert_eq!(BigUint::from(enumerate_class(&m, n).len()), class_size(&m, n));
            }
        }
    }

    #[test]
    fn embedding_preserves_reduced_type() {
        for n in 1..=7 {
            for q in all_permutations(n) {
                assert_eq!(q.embed().reduced_cycle_type(), q.reduced_cycle_type());
            }
        }
    }

    #[test]
    fn parsing() {
        let q: Permutation = "(1 2 3)(4 5)".parse().unwrap();
        assert_eq!(q, p(&[2, 3, 1, 5, 4]));
        assert_eq!("[2,3,1,5,4]".parse::<Permutation>().unwrap(), q);
        assert_eq!(parse_permutation("(1 2)", Some(4)).unwrap(), p(&[2, 1, 3, 4]));
        assert_eq!(q.to_string(), "[2,3,1,5,4]");
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!("(1 2".parse::<Permutation>().is_err());
    }

    #[test]
    fn index_tuples() {
        assert!(IndexTuple::new(vec![1, 3], 2).is_err());
        assert_eq!(IndexTuple::all(2, 3).len(), 9);
        let i = IndexTuple::new(vec![1, 2], 2).unwrap();
        let j = IndexTuple::new(vec![2, 1], 2).unwrap();
        assert!(i.matches(&j, &p(&[2, 1])));
        assert!(!i.matches(&j, &Permutation::identity(2)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm() -> impl Strategy<Value = Permutation> {
            (1usize..10).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(|w| Permutation::from_one_line(&w).unwrap())
        }

        proptest! {
            #[test]
            fn cycles_plus_reduced_size_is_degree(q in arb_perm()) {
                prop_assert_eq!(q.cycle_count() + q.reduced_cycle_type().size(), q.degree());
                prop_assert_eq!(q.support().len(), q.reduced_cycle_type().weight());
            }

            #[test]
            fn inverse_cancels(q in arb_perm()) {
                prop_assert!(q.compose(&q.inverse()).unwrap().is_identity());
            }
        }
    }
}
