//! Golden class expansions and leading-coefficient tables, with verification
//! against the library.
//!
//! The data files are parsed at run time so a corrupted copy can be checked
//! the same way as the embedded one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::class_expansion::{class_coeff, class_polys, top_coeff_f, top_coeff_l};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::poly::PolynomialQ;
use crate::rational::{q, Q};
use crate::symfun::SymFunSpec;

pub const A1_DATA: &str = include_str!("../data/appendix_a1.txt");
pub const A2_DATA: &str = include_str!("../data/appendix_a2.txt");

#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub label: String,
    pub f: SymFunSpec,
    pub coeffs: BTreeMap<Partition, PolynomialQ>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionBlock {
    pub size: usize,
    pub expansions: Vec<Expansion>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTable {
    pub k: usize,
    pub columns: Vec<Partition>,
    /// Row partition and its entries, padded with zeros to the full width.
    pub rows: Vec<(Partition, Vec<BigUint>)>,
    pub sum: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub location: String,
    pub expected: String,
    pub computed: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, computed {}", self.location, self.expected, self.computed)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub blocks: usize,
    pub cells: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn check(&mut self, location: impl FnOnce() -> String, expected: String, computed: String) {
        self.cells += 1;
        if expected != computed {
            self.mismatches.push(Mismatch { location: location(), expected, computed });
        }
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.blocks += other.blocks;
        self.cells += other.cells;
        self.mismatches.extend(other.mismatches);
    }
}

fn parse_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_expansions(text: &str) -> Result<Vec<ExpansionBlock>> {
    let mut blocks: Vec<ExpansionBlock> = Vec::new();
    for (ln, line) in content_lines(text) {
        if let Some(size) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let size = size.trim().parse().map_err(|_| parse_err(ln, "bad block header"))?;
            blocks.push(ExpansionBlock { size, expansions: Vec::new() });
            continue;
        }
        let block = blocks.last_mut().ok_or_else(|| parse_err(ln, "expansion before any block header"))?;
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| parse_err(ln, "missing '='"))?;
        let label = lhs.trim().to_string();
        let f: SymFunSpec = label.parse().map_err(|e| parse_err(ln, e))?;
        let coeffs = parse_class_sum(rhs).map_err(|e| parse_err(ln, e))?;
        block.expansions.push(Expansion { label, f, coeffs });
    }
    Ok(blocks)
}

/// Parses `sum_i coeff_i(n) c(mu_i)` where each coefficient is a product of
/// rationals, `n`, `n^k` and parenthesized sums of these.
pub fn parse_class_sum(s: &str) -> Result<BTreeMap<Partition, PolynomialQ>> {
    let mut p = ExprParser { s: s.as_bytes(), pos: 0 };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    let mut out = BTreeMap::new();
    for (k, poly) in v {
        let k = k.ok_or_else(|| Error::Parse(format!("term without a class symbol in {s:?}")))?;
        if !poly.is_zero() {
            out.insert(k, poly);
        }
    }
    Ok(out)
}

type Linear = BTreeMap<Option<Partition>, PolynomialQ>;

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("expected a number"))
    }

    fn sum(&mut self) -> Result<Linear> {
        let mut acc = Linear::new();
        let mut sign = q(1);
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            if c == b'-' {
                sign = q(-1);
            }
        }
        loop {
            let t = self.product()?;
            for (k, v) in t {
                let e = acc.entry(k).or_insert_with(PolynomialQ::zero);
                *e = &*e + &v.scale(&sign);
            }
            match self.peek() {
                Some(b'+') => sign = q(1),
                Some(b'-') => sign = q(-1),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Linear> {
        let mut acc: Linear = [(None, PolynomialQ::constant(q(1)))].into_iter().collect();
        let mut any = false;
        while let Some(c) = self.peek() {
            let f = match c {
                b'0'..=b'9' => {
                    let num = self.number()?;
                    let mut v = q(num as i64);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.number()?;
                        if den == 0 {
                            return Err(self.err("zero denominator"));
                        }
                        v /= q(den as i64);
                    }
                    scalar(PolynomialQ::constant(v))
                }
                b'n' => {
                    self.pos += 1;
                    let mut e = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.number()?;
                    }
                    scalar(PolynomialQ::monomial(q(1), e))
                }
                b'(' => {
                    self.pos += 1;
                    let v = self.sum()?;
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    v
                }
                b'c' => {
                    self.pos += 1;
                    if self.peek() != Some(b'(') {
                        return Err(self.err("expected '(' after c"));
                    }
                    let close = self.s[self.pos..].iter().position(|&b| b == b')').ok_or_else(|| self.err("unclosed c("))?;
                    let inner = std::str::from_utf8(&self.s[self.pos + 1..self.pos + close]).unwrap();
                    let m: Partition = inner.parse().map_err(|_| self.err("bad partition"))?;
                    self.pos += close + 1;
                    [(Some(m), PolynomialQ::constant(q(1)))].into_iter().collect()
                }
                _ => break,
            };
            acc = multiply(&acc, &f).ok_or_else(|| self.err("product of two class symbols"))?;
            any = true;
        }
        if !any {
            return Err(self.err("expected a term"));
        }
        Ok(acc)
    }
}

fn scalar(p: PolynomialQ) -> Linear {
    [(None, p)].into_iter().collect()
}

fn multiply(a: &Linear, b: &Linear) -> Option<Linear> {
    let mut out = Linear::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let key = match (ka, kb) {
                (Some(_), Some(_)) => return None,
                (Some(k), None) | (None, Some(k)) => Some(k.clone()),
                (None, None) => None,
            };
            let e = out.entry(key).or_insert_with(PolynomialQ::zero);
            *e = &*e + &(va * vb);
        }
    }
    Some(out)
}

pub fn parse_tables(text: &str) -> Result<Vec<LeadingTable>> {
    let mut tables: Vec<LeadingTable> = Vec::new();
    let nat = |ln: usize, s: &str| s.parse::<BigUint>().map_err(|_| parse_err(ln, format!("bad entry {s:?}")));
    for (ln, line) in content_lines(text) {
        if let Some(k) = line.strip_prefix("k ") {
            let k = k.trim().parse().map_err(|_| parse_err(ln, "bad k"))?;
            tables.push(LeadingTable { k, columns: Vec::new(), rows: Vec::new(), sum: Vec::new() });
            continue;
        }
        let t = tables.last_mut().ok_or_else(|| parse_err(ln, "data before 'k' header"))?;
        if let Some(cols) = line.strip_prefix("cols ") {
            t.columns = cols
                .split('|')
                .map(|c| c.trim().parse::<Partition>().map_err(|e| parse_err(ln, e)))
                .collect::<Result<_>>()?;
            continue;
        }
        let (head, entries) = line.split_once(':').ok_or_else(|| parse_err(ln, "missing ':'"))?;
        let mut values: Vec<BigUint> = entries.split_whitespace().map(|s| nat(ln, s)).collect::<Result<_>>()?;
        if values.len() > t.columns.len() {
            return Err(parse_err(ln, "more entries than columns"));
        }
        if head.trim() == "SUM" {
            if values.len() != t.columns.len() {
                return Err(parse_err(ln, "SUM row must be complete"));
            }
            t.sum = values;
        } else {
            values.resize(t.columns.len(), BigUint::zero());
            let row: Partition = head.trim().parse().map_err(|e| parse_err(ln, e))?;
            t.rows.push((row, values));
        }
    }
    Ok(tables)
}

pub fn embedded_expansions() -> Vec<ExpansionBlock> {
    parse_expansions(A1_DATA).expect("embedded expansion data parses")
}

pub fn embedded_tables() -> Vec<LeadingTable> {
    parse_tables(A2_DATA).expect("embedded table data parses")
}

/// Recomputes each expansion as interpolated class polynomials and compares
/// every class coefficient, including classes absent from the golden data.
pub fn verify_expansions(blocks: &[ExpansionBlock]) -> Result<VerifyReport> {
    let mut rep = VerifyReport::default();
    for block in blocks {
        rep.blocks += 1;
        for e in &block.expansions {
            let computed = class_polys(&e.f)?;
            let mut keys: Vec<&Partition> = computed.keys().chain(e.coeffs.keys()).collect();
            keys.sort();
            keys.dedup();
            for m in keys {
                let zero = PolynomialQ::zero();
                let exp = e.coeffs.get(m).unwrap_or(&zero);
                let got = computed.get(m).unwrap_or(&zero);
                rep.check(|| format!("{} coefficient of c({m})", e.label), exp.to_string_in("n"), got.to_string_in("n"));
            }
        }
    }
    Ok(rep)
}

/// Checks the shape of each table, every entry against `top_coeff_l`, the
/// SUM row against both the golden column sums and `prod Cat`.
pub fn verify_tables(tables: &[LeadingTable], only_k: Option<usize>) -> Result<VerifyReport> {
    let mut rep = VerifyReport::default();
    for t in tables.iter().filter(|t| only_k.is_none_or(|k| k == t.k)) {
        rep.blocks += 1;
        let parts = enumerate_partitions(t.k);
        let labels = |ps: &[Partition]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" | ");
        let row_labels: Vec<Partition> = t.rows.iter().map(|(r, _)| r.clone()).collect();
        rep.check(|| format!("k={} columns", t.k), labels(&t.columns), labels(&parts));
        rep.check(|| format!("k={} rows", t.k), labels(&row_labels), labels(&parts));
        for (l, values) in &t.rows {
            for (m, v) in t.columns.iter().zip(values) {
                let got = top_coeff_l(l, m)?;
                rep.check(|| format!("k={} row {l} column {m}", t.k), v.to_string(), got.to_string());
            }
        }
        for (j, m) in t.columns.iter().enumerate() {
            let s = &t.sum[j];
            let col: BigUint = t.rows.iter().map(|(_, v)| &v[j]).sum();
            rep.check(|| format!("k={} SUM column {m} (column total)", t.k), s.to_string(), col.to_string());
            rep.check(|| format!("k={} SUM column {m} (Catalan product)", t.k), s.to_string(), top_coeff_f(m).to_string());
        }
    }
    Ok(rep)
}

/// Table entries recomputed as `class_coeff(m_l, mu, wt(mu))`, independent of
/// the refinement formula.
pub fn verify_tables_by_class_coeff(tables: &[LeadingTable], kmax: usize) -> Result<VerifyReport> {
    let mut rep = VerifyReport::default();
    for t in tables.iter().filter(|t| t.k <= kmax) {
        rep.blocks += 1;
        for (l, values) in &t.rows {
            let f = SymFunSpec::m(l.clone());
            for (m, v) in t.columns.iter().zip(values) {
                let got: Q = class_coeff(&f, m, m.weight())?;
                rep.check(|| format!("k={} row {l} column {m} (class coefficient)", t.k), v.to_string(), got.to_string());
            }
        }
    }
    Ok(rep)
}

/// Full check of the embedded data; `only_k` restricts to one table and skips the expansions.
pub fn appendix_verify(only_k: Option<usize>) -> Result<(VerifyReport, VerifyReport)> {
    let a1 = if only_k.is_some() { VerifyReport::default() } else { verify_expansions(&embedded_expansions())? };
    let a2 = verify_tables(&embedded_tables(), only_k)?;
    Ok((a1, a2))
}
