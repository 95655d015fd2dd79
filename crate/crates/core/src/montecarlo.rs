//! Monte Carlo estimates of correlators from Haar-distributed unitaries.
//!
//! Randomness comes from ChaCha8 seeded with `seed`; sample `s` of an estimate
//! is drawn from stream `s / CHUNK` so the result does not depend on the
//! number of worker threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::rational::{to_f64, Q};
use crate::weingarten::{general_correlator, CorrelatorQuery};

const CHUNK: usize = 4096;

/// Minimum sample count accepted by [`estimate_correlator`].
pub const MIN_SAMPLES: usize = 1000;

/// Threshold on `|z|` above which an estimate is flagged.
pub const Z_THRESHOLD: f64 = 4.0;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// `max |(U U^dagger - I)_{ab}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let id = Self::identity(self.n);
        p.data.iter().zip(&id.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Permutation matrix with `P e_k = e_{p(k)}`, from a 0-based image list.
    pub fn permutation(images: &[usize]) -> ComplexMatrix {
        let mut m = Self::zeros(images.len());
        for (k, &pk) in images.iter().enumerate() {
            m.set(pk, k, Complex64::new(1.0, 0.0));
        }
        m
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
}

/// Ginibre matrix orthonormalized column by column (modified Gram-Schmidt).
/// Each column is normalized by its positive real norm, so the triangular
/// factor has a positive real diagonal and the result is Haar distributed.
pub fn haar_from_rng(big_n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let n = big_n;
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|_| (0..n).map(|_| gaussian(rng)).collect()).collect();
    for j in 0..n {
        for i in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let qi = &done[i];
            let v = &mut rest[0];
            let r: Complex64 = qi.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in v.iter_mut().zip(qi) {
                *x -= r * a;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut m = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

pub fn sample_haar(big_n: usize, seed: u64) -> Result<ComplexMatrix> {
    if big_n == 0 {
        return Err(domain("N must be positive"));
    }
    Ok(haar_from_rng(big_n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    pub mean: Complex64,
    pub standard_error: f64,
    pub samples: usize,
    pub target: Option<Q>,
    pub z_score: Option<f64>,
}

impl EstimateReport {
    pub fn with_target(mut self, target: Q) -> Self {
        let t = to_f64(&target);
        let d = (self.mean - Complex64::new(t, 0.0)).norm();
        self.z_score = Some(if self.standard_error > 0.0 {
            d / self.standard_error
        } else if d < 1e-12 {
            0.0
        } else {
            f64::INFINITY
        });
        self.target = Some(target);
        self
    }

    /// True when a target is present and `|z| > 4`.
    pub fn flagged(&self) -> bool {
        self.z_score.is_some_and(|z| z > Z_THRESHOLD)
    }
}

/// `prod_k u_{i(k) j(k)} conj(u_{i'(k) j'(k)})`.
pub fn correlator_sample(u: &ComplexMatrix, q: &CorrelatorQuery) -> Complex64 {
    let (i, j, ip, jp) = (q.i.values(), q.j.values(), q.iprime.values(), q.jprime.values());
    (0..q.n()).fold(Complex64::new(1.0, 0.0), |acc, k| {
        acc * u.get(i[k] - 1, j[k] - 1) * u.get(ip[k] - 1, jp[k] - 1).conj()
    })
}

/// Per-sample values of `f(U)` for `samples` Haar draws.
pub fn sample_values<F>(big_n: usize, samples: usize, seed: u64, f: F) -> Vec<Complex64>
where
    F: Fn(&ComplexMatrix) -> Complex64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(samples - c * CHUNK);
            let f = &f;
            (0..len).map(move |_| f(&haar_from_rng(big_n, &mut rng))).collect::<Vec<_>>()
        })
        .collect()
}

/// Mean with delete-one jackknife standard error.
pub fn jackknife(values: &[Complex64]) -> (Complex64, f64) {
    let n = values.len();
    let total: Complex64 = values.iter().sum();
    let mean = total / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let loo = |x: &Complex64| (total - x) / (n - 1) as f64;
    let loo_mean: Complex64 = values.iter().map(loo).sum::<Complex64>() / n as f64;
    let var = values.iter().map(|x| (loo(x) - loo_mean).norm_sqr()).sum::<f64>() * (n - 1) as f64 / n as f64;
    (mean, var.sqrt())
}

pub fn estimate_correlator(q: &CorrelatorQuery, samples: usize, seed: u64) -> Result<EstimateReport> {
    if samples < MIN_SAMPLES {
        return Err(domain(format!("at least {MIN_SAMPLES} samples required, got {samples}")));
    }
    let values = sample_values(q.big_n(), samples, seed, |u| correlator_sample(u, q));
    let (mean, standard_error) = jackknife(&values);
    Ok(EstimateReport { mean, standard_error, samples, target: None, z_score: None })
}

/// Estimates several queries of a common range `N` from one shared set of samples.
pub fn estimate_many(queries: &[CorrelatorQuery], samples: usize, seed: u64) -> Result<Vec<EstimateReport>> {
    let Some(first) = queries.first() else {
        return Ok(Vec::new());
    };
    if queries.iter().any(|q| q.big_n() != first.big_n()) {
        return Err(domain("queries must share N"));
    }
    if samples < MIN_SAMPLES {
        return Err(domain(format!("at least {MIN_SAMPLES} samples required, got {samples}")));
    }
    let chunks = samples.div_ceil(CHUNK);
    let per_chunk: Vec<Vec<Vec<Complex64>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut cols = vec![Vec::with_capacity(len); queries.len()];
            for _ in 0..len {
                let u = haar_from_rng(first.big_n(), &mut rng);
                for (col, q) in cols.iter_mut().zip(queries) {
                    col.push(correlator_sample(&u, q));
                }
            }
            cols
        })
        .collect();
    Ok((0..queries.len())
        .map(|qi| {
            let values: Vec<Complex64> = per_chunk.iter().flat_map(|c| c[qi].iter().copied()).collect();
            let (mean, standard_error) = jackknife(&values);
            EstimateReport { mean, standard_error, samples, target: None, z_score: None }
        })
        .collect())
}

/// Estimate compared against the exact Gram-matrix value.
pub fn validate(q: &CorrelatorQuery, samples: usize, seed: u64) -> Result<EstimateReport> {
    let target = general_correlator(q)?;
    Ok(estimate_correlator(q, samples, seed)?.with_target(target))
}
