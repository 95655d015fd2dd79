//! Integer partitions and the combinatorics built on them: weights,
//! reduction/inflation, the weakly increasing sequence sets `E(a; r)`,
//! refined Catalan numbers and refinement sets.
//!
//! Canonical order for partitions of a fixed size is reverse lexicographic:
//! `(4) > (3,1) > (2,2) > (2,1,1) > (1,1,1,1)`, listed largest first. This is
//! the row order of every table the crate prints.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numbers::factorial;

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the empty partition `()`, sometimes written `(0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(domain(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the input and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(k)`; empty for `k = 0`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![k] }
        }
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition { parts: vec![1; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|p| + l(p)`: the smallest `n` for which the class of reduced type `p` is non-empty in `S(n)`.
    pub fn weight(&self) -> usize {
        self.size() + self.length()
    }

    /// Subtracts one from every part and drops zeros.
    pub fn reduce(&self) -> Partition {
        Partition {
            parts: self.parts.iter().filter(|&&p| p > 1).map(|p| p - 1).collect(),
        }
    }

    /// `(p_1 + 1, ..., p_l + 1, 1^{n - wt(p)})`, a partition of `n`.
    pub fn inflate(&self, n: usize) -> Result<Partition> {
        let wt = self.weight();
        if n < wt {
            return Err(domain(format!("cannot inflate {self} (weight {wt}) to size {n}")));
        }
        let mut parts: Vec<usize> = self.parts.iter().map(|p| p + 1).collect();
        parts.extend(std::iter::repeat_n(1, n - wt));
        Ok(Partition { parts })
    }

    /// `(i, m_i)` pairs for each distinct part `i`, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Dominance order: `self <= other` iff every partial sum of `self` is at most that of `other`.
    /// Only meaningful for partitions of equal size.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let len = self.length().max(other.length());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    /// The multiset union of parts, re-sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// `z_p = prod_i i^{m_i} m_i!`, the centralizer order of a permutation of cycle type `p`.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, (i, m)| {
                acc * BigUint::from(i).pow(m as u32) * factorial(m)
            })
    }

    /// Cells `(row, col)` of the Young diagram, 0-indexed.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..first)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts comma lists such as `3,1,1`; `0`, `-` and the empty string denote `()`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "-" || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Shorthand used throughout tests: `part(&[3, 1, 1])`.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition literal")
}

pub fn weight(p: &Partition) -> usize {
    p.weight()
}

pub fn reduce(p: &Partition) -> Partition {
    p.reduce()
}

pub fn inflate(m: &Partition, n: usize) -> Result<Partition> {
    m.inflate(n)
}

/// All partitions of `k`, in reverse lexicographic order.
pub fn enumerate_partitions(k: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// All partitions `m` with `wt(m) <= n`, grouped by size and reverse lexicographic within a size.
pub fn partitions_of_weight_at_most(n: usize) -> Vec<Partition> {
    (0..=n)
        .flat_map(enumerate_partitions)
        .filter(|m| m.weight() <= n)
        .collect()
}

/// An element of the refinement set: one block per part of the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RefinementTuple {
    pub blocks: Vec<Partition>,
}

/// All tuples `(l^(1), ..., l^(len m))` with `l^(i)` a partition of `m_i` and
/// multiset union equal to `l`.
pub fn refinement_set(l: &Partition, m: &Partition) -> Result<Vec<RefinementTuple>> {
    if l.size() != m.size() {
        return Err(domain(format!(
            "refinement needs equal sizes, got |{l}| = {} and |{m}| = {}",
            l.size(),
            m.size()
        )));
    }
    // remaining multiplicities of the distinct parts of l
    let mults = l.multiplicities();
    let values: Vec<usize> = mults.iter().map(|&(v, _)| v).collect();
    let mut remaining: Vec<usize> = mults.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    refine(&values, &mut remaining, m.parts(), &mut blocks, &mut out);
    Ok(out)
}

fn refine(
    values: &[usize],
    remaining: &mut [usize],
    targets: &[usize],
    blocks: &mut Vec<Partition>,
    out: &mut Vec<RefinementTuple>,
) {
    let Some((&target, rest)) = targets.split_first() else {
        if remaining.iter().all(|&c| c == 0) {
            out.push(RefinementTuple { blocks: blocks.clone() });
        }
        return;
    };
    let mut take = vec![0; values.len()];
    choose_block(values, remaining, 0, target, &mut take, &mut |remaining, take| {
        let mut parts = Vec::new();
        for (v, &c) in values.iter().zip(take.iter()) {
            parts.extend(std::iter::repeat_n(*v, c));
        }
        blocks.push(Partition { parts });
        refine(values, remaining, rest, blocks, out);
        blocks.pop();
    });
}

/// Enumerates sub-multisets (as multiplicity vectors) of `remaining` summing to `target`.
fn choose_block(
    values: &[usize],
    remaining: &mut [usize],
    idx: usize,
    target: usize,
    take: &mut Vec<usize>,
    visit: &mut dyn FnMut(&mut [usize], &[usize]),
) {
    if target == 0 {
        let snapshot = take.clone();
        visit(remaining, &snapshot);
        return;
    }
    if idx == values.len() {
        return;
    }
    let v = values[idx];
    let max = remaining[idx].min(target / v);
    for c in (0..=max).rev() {
        take[idx] = c;
        remaining[idx] -= c;
        choose_block(values, remaining, idx + 1, target - c * v, take, visit);
        remaining[idx] += c;
    }
    take[idx] = 0;
}

/// A weakly increasing sequence of positive integers together with the
/// offset `a` of the set `E(a; r)` it was drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncreasingSequence {
    pub entries: Vec<usize>,
    pub offset: usize,
}

impl IncreasingSequence {
    /// Membership in `E(offset; r)` with `r = entries.len()`.
    pub fn is_member(&self) -> bool {
        let r = self.entries.len();
        if r == 0 {
            return false;
        }
        let a = self.offset;
        self.entries.windows(2).all(|w| w[0] <= w[1])
            && self.entries[..r - 1]
                .iter()
                .enumerate()
                .all(|(p, &i)| i > a + p)
            && self.entries[r - 1] == a + r
    }
}

/// Weakly increasing `(i_1, ..., i_r)` with `i_p >= a + p` for `p < r` and `i_r = a + r`.
/// There are `Cat_r` of them.
pub fn enumerate_e(a: usize, r: usize) -> Vec<IncreasingSequence> {
    fn go(a: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<IncreasingSequence>) {
        let p = cur.len() + 1;
        if p == r {
            let last = a + r;
            if cur.last().is_none_or(|&prev| prev <= last) {
                cur.push(last);
                out.push(IncreasingSequence { entries: cur.clone(), offset: a });
                cur.pop();
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(0).max(a + p);
        for i in lo..=a + r {
            cur.push(i);
            go(a, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        go(a, r, &mut Vec::new(), &mut out);
    }
    out
}

/// The multiplicities of the distinct values of a weakly increasing sequence, sorted decreasingly.
pub fn sequence_type(s: &[usize]) -> Result<Partition> {
    if s.is_empty() {
        return Err(domain("sequence type of an empty sequence"));
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in s {
        *counts.entry(v).or_default() += 1;
    }
    Ok(Partition::from_unsorted(counts.into_values().collect()))
}

/// Refined Catalan number by enumeration: the number of sequences in `E(0; |l|)` of type `l`.
pub fn rc_count(l: &Partition) -> BigUint {
    if l.is_empty() {
        return BigUint::from(1u32);
    }
    let n = enumerate_e(0, l.size())
        .iter()
        .filter(|s| sequence_type(&s.entries).as_ref() == Ok(l))
        .count();
    BigUint::from(n)
}

/// Refined Catalan number in closed form: `|l|! / ((|l| - l(l) + 1)! prod_i m_i(l)!)`.
pub fn rc_formula(l: &Partition) -> BigUint {
    let k = l.size();
    let len = l.length();
    let den = l
        .multiplicities()
        .into_iter()
        .fold(factorial(k + 1 - len), |acc, (_, m)| acc * factorial(m));
    factorial(k) / den
}
