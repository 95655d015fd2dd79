//! JSON forms of the value types. Big integers and rationals are written as
//! decimal strings so no precision is lost.
//!
//! Schemas (version [`SCHEMA_VERSION`]):
//!
//! - rational: `"p/q"` or `"p"`
//! - class vector: `{"n": 5, "coeffs": [{"mu": "3,1", "num": "5", "den": "1"}]}`
//! - polynomial: `{"var": "n", "coeffs": ["-3", "2"]}` (ascending powers)
//! - rational function: `{"var": "N", "numerator": [...], "denominator": [...]}`
//! - estimate: `{"mean": {"re": .., "im": ..}, "standard_error": .., "samples": ..,
//!   "target": "p/q" | null, "z_score": .. | null}`

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::ClassVector;
use crate::error::{Error, Result};
use crate::montecarlo::EstimateReport;
use crate::partitions::Partition;
use crate::poly::{PolynomialQ, RationalFunctionQ};
use crate::rational::{parse_q, Q};

pub const SCHEMA_VERSION: u32 = 1;

/// Conversion to and from a serde-friendly representation.
pub trait JsonForm: Sized {
    type Repr: Serialize + DeserializeOwned;

    fn to_repr(&self) -> Self::Repr;
    fn from_repr(r: Self::Repr) -> Result<Self>;

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_repr()).expect("representation serializes")
    }

    fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("representation serializes")
    }

    fn from_json_str(s: &str) -> Result<Self> {
        let r: Self::Repr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_repr(r)
    }
}

fn rational(s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
}

fn integer(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

impl JsonForm for Q {
    type Repr = String;

    fn to_repr(&self) -> String {
        self.to_string()
    }

    fn from_repr(r: String) -> Result<Self> {
        rational(&r)
    }
}

#[derive(Serialize, Deserialize)]
pub struct ClassTermRepr {
    pub mu: String,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Deserialize)]
pub struct ClassVectorRepr {
    pub n: usize,
    pub coeffs: Vec<ClassTermRepr>,
}

impl JsonForm for ClassVector {
    type Repr = ClassVectorRepr;

    fn to_repr(&self) -> ClassVectorRepr {
        ClassVectorRepr {
            n: self.degree,
            coeffs: self
                .sorted()
                .into_iter()
                .map(|(mu, c)| ClassTermRepr { mu: mu.to_string(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    fn from_repr(r: ClassVectorRepr) -> Result<Self> {
        let mut terms = Vec::with_capacity(r.coeffs.len());
        for t in r.coeffs {
            let mu: Partition = t.mu.parse()?;
            let den = integer(&t.den)?;
            if den == BigInt::ZERO {
                return Err(Error::Parse("zero denominator".into()));
            }
            terms.push((mu, Q::new(integer(&t.num)?, den)));
        }
        ClassVector::new(r.n, terms)
    }
}

#[derive(Serialize, Deserialize)]
pub struct PolynomialRepr {
    pub var: String,
    pub coeffs: Vec<String>,
}

fn poly_repr(p: &PolynomialQ, var: &str) -> PolynomialRepr {
    PolynomialRepr { var: var.to_string(), coeffs: p.coeffs().iter().map(Q::to_string).collect() }
}

fn poly_from(coeffs: &[String]) -> Result<PolynomialQ> {
    Ok(PolynomialQ::new(coeffs.iter().map(|c| rational(c)).collect::<Result<_>>()?))
}

impl JsonForm for PolynomialQ {
    type Repr = PolynomialRepr;

    fn to_repr(&self) -> PolynomialRepr {
        poly_repr(self, "t")
    }

    fn from_repr(r: PolynomialRepr) -> Result<Self> {
        poly_from(&r.coeffs)
    }
}

/// Polynomial in a named variable.
pub fn polynomial_json(p: &PolynomialQ, var: &str) -> serde_json::Value {
    serde_json::to_value(poly_repr(p, var)).expect("representation serializes")
}

#[derive(Serialize, Deserialize)]
pub struct RationalFunctionRepr {
    pub var: String,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl JsonForm for RationalFunctionQ {
    type Repr = RationalFunctionRepr;

    fn to_repr(&self) -> RationalFunctionRepr {
        rational_function_repr(self, "N")
    }

    fn from_repr(r: RationalFunctionRepr) -> Result<Self> {
        RationalFunctionQ::new(poly_from(&r.numerator)?, poly_from(&r.denominator)?)
    }
}

pub fn rational_function_repr(r: &RationalFunctionQ, var: &str) -> RationalFunctionRepr {
    RationalFunctionRepr {
        var: var.to_string(),
        numerator: poly_repr(r.numerator(), var).coeffs,
        denominator: poly_repr(r.denominator(), var).coeffs,
    }
}

#[derive(Serialize, Deserialize, Clone, Copy)]
pub struct ComplexRepr {
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize, Deserialize)]
pub struct EstimateRepr {
    pub mean: ComplexRepr,
    pub standard_error: f64,
    pub samples: usize,
    pub target: Option<String>,
    pub z_score: Option<f64>,
}

impl JsonForm for EstimateReport {
    type Repr = EstimateRepr;

    fn to_repr(&self) -> EstimateRepr {
        EstimateRepr {
            mean: ComplexRepr { re: self.mean.re, im: self.mean.im },
            standard_error: self.standard_error,
            samples: self.samples,
            target: self.target.as_ref().map(Q::to_string),
            z_score: self.z_score,
        }
    }

    fn from_repr(r: EstimateRepr) -> Result<Self> {
        Ok(EstimateReport {
            mean: Complex64::new(r.mean.re, r.mean.im),
            standard_error: r.standard_error,
            samples: r.samples,
            target: r.target.as_deref().map(rational).transpose()?,
            z_score: r.z_score,
        })
    }
}
