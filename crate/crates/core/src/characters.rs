//! Irreducible characters of `S(n)`, hook lengths, contents and central characters.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::numbers::factorial;
use crate::partitions::Partition;
use crate::perm::class_size;
use crate::rational::{from_uint, Q};
use crate::symfun::SymFunSpec;

/// Multiset of contents `j - i` of the cells `(i, j)` of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentAlphabet {
    pub values: Vec<i64>,
}

impl ContentAlphabet {
    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

pub fn contents(l: &Partition) -> ContentAlphabet {
    ContentAlphabet {
        values: l.cells().map(|(i, j)| j as i64 - i as i64).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    pub shape: Partition,
    pub hook_product: BigUint,
    pub dimension: BigUint,
}

pub fn hook_data(l: &Partition) -> HookData {
    let conj = l.conjugate();
    let hook_product = l
        .cells()
        .map(|(i, j)| BigUint::from(l.parts()[i] - j + conj.parts()[j] - i - 1))
        .product::<BigUint>();
    let dimension = factorial(l.size()) / &hook_product;
    HookData { shape: l.clone(), hook_product, dimension }
}

type Memo = Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `chi^l_nu` by the Murnaghan-Nakayama rule.
pub fn character(l: &Partition, nu: &Partition) -> Result<BigInt> {
    if l.size() != nu.size() {
        return Err(domain(format!("|{l}| != |{nu}|")));
    }
    Ok(BigInt::from(mn(l.parts(), nu.parts())))
}

/// Border strips are removed via beta-numbers: a strip of length `r` moves one
/// bead from `b` to `b - r`, with sign given by the beads jumped over.
fn mn(shape: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    if rest.is_empty() {
        // single strip: shape must be a hook of size r
        return match shape {
            [] => 1,
            [a, tail @ ..] if tail.iter().all(|&x| x == 1) && a + tail.len() == r => {
                if tail.len() % 2 == 0 { 1 } else { -1 }
            }
            _ => 0,
        };
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = memo().lock().unwrap().get(&key) {
        return v;
    }
    let len = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = b - r;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let next: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let v = mn(&next, rest);
        total += if jumped % 2 == 0 { v } else { -v };
    }
    memo().lock().unwrap().insert(key, total);
    total
}

/// `omega_m(l) = |C_m(n)| chi^l_nu / dim l`, zero when the class is empty.
pub fn central_character(m: &Partition, l: &Partition) -> Q {
    let n = l.size();
    let Ok(nu) = m.inflate(n) else {
        return Q::zero();
    };
    let chi = Q::from_integer(BigInt::from(mn(l.parts(), nu.parts())));
    from_uint(&class_size(m, n)) * chi / from_uint(&hook_data(l).dimension)
}

pub fn eval_on_alphabet(f: &SymFunSpec, a: &ContentAlphabet) -> Q {
    Q::from_integer(f.eval(&a.values))
}

/// `(dim l)^2 / n!`.
pub fn plancherel_weight(l: &Partition) -> Q {
    let d = hook_data(l).dimension;
    from_uint(&(&d * &d)) / from_uint(&factorial(l.size()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, part};
    use crate::rational::q;
    use num_traits::One;

    #[test]
    fn content_examples() {
        assert_eq!(contents(&part(&[1, 1, 1])).values, vec![0, -1, -2]);
        assert_eq!(contents(&part(&[4])).values, vec![0, 1, 2, 3]);
        let mut c = contents(&part(&[2, 1])).values;
        c.sort();
        assert_eq!(c, vec![-1, 0, 1]);
    }

    #[test]
    fn hooks() {
        assert_eq!(hook_data(&part(&[5])).dimension, BigUint::one());
        assert_eq!(hook_data(&part(&[1, 1, 1])).dimension, BigUint::one());
        let h = hook_data(&part(&[2, 1]));
        assert_eq!((h.hook_product, h.dimension), (BigUint::from(3u32), BigUint::from(2u32)));
        for n in 1..=9 {
            let s: BigUint = enumerate_partitions(n).iter().map(|l| hook_data(l).dimension.pow(2)).sum();
            assert_eq!(s, factorial(n));
        }
    }

    #[test]
    fn hook_and_almost_hook_values() {
        for n in 2..=9 {
            for r in 1..=n {
                let mut parts = vec![r];
                parts.extend(std::iter::repeat_n(1, n - r));
                let sign = if (n - r) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&part(&parts), &Partition::row(n)).unwrap(), BigInt::from(sign));
            }
            for r in 2..=n.saturating_sub(2) {
                let mut parts = vec![r, 2];
                parts.extend(std::iter::repeat_n(1, n - r - 2));
                let sign = if (n - r - 1) % 2 == 0 { 1 } else { -1 };
                let nu = part(&[n - 1, 1]);
                assert_eq!(character(&part(&parts), &nu).unwrap(), BigInt::from(sign), "{parts:?}");
            }
        }
        assert_eq!(character(&part(&[2, 1]), &part(&[3])).unwrap(), BigInt::from(-1));
        assert!(character(&part(&[2, 1]), &part(&[2])).is_err());
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=7 {
            let ps = enumerate_partitions(n);
            for nu in &ps {
                for rho in &ps {
                    let s: BigInt = ps.iter().map(|l| character(l, nu).unwrap() * character(l, rho).unwrap()).sum();
                    let expected = if nu == rho { BigInt::from(nu.centralizer_order()) } else { BigInt::zero() };
                    assert_eq!(s, expected);
                }
            }
            for l in &ps {
                let dim = character(l, &Partition::column(n)).unwrap();
                assert_eq!(dim, BigInt::from(hook_data(l).dimension));
            }
        }
    }

    #[test]
    fn central_characters() {
        assert_eq!(central_character(&part(&[]), &part(&[3, 1])), q(1));
        assert_eq!(central_character(&part(&[1]), &part(&[2])), q(1));
        assert_eq!(central_character(&part(&[1]), &part(&[1, 1])), q(-1));
        assert_eq!(central_character(&part(&[3]), &part(&[2])), q(0));
        for n in 1..=7 {
            for l in enumerate_partitions(n) {
                assert_eq!(central_character(&part(&[1]), &l), q(contents(&l).sum()));
            }
        }
    }

    #[test]
    fn alphabet_evaluation() {
        assert_eq!(eval_on_alphabet(&SymFunSpec::p(1), &contents(&part(&[2, 1]))), q(0));
        assert_eq!(eval_on_alphabet(&SymFunSpec::e(2), &contents(&part(&[2]))), q(0));
        assert_eq!(eval_on_alphabet(&SymFunSpec::h(2), &contents(&part(&[2, 1]))), q(1));
    }
}
