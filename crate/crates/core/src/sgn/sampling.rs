use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed, SimRng};
use crate::scalar::Real;

/// How a minibatch of `batch` indices is drawn from `n_total` examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingScheme {
    pub n_total: usize,
    pub batch: usize,
    pub replacement: bool,
}

impl SamplingScheme {
    pub fn new(n_total: usize, batch: usize, replacement: bool) -> Result<Self> {
        let s = Self {
            n_total,
            batch,
            replacement,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_total == 0 {
            return Err(Error::invalid("n_total", "must be at least 1"));
        }
        if self.batch == 0 || self.batch > self.n_total {
            return Err(Error::invalid(
                "batch",
                format!("must lie in [1, {}], got {}", self.n_total, self.batch),
            ));
        }
        Ok(())
    }

    /// Scale `c` in `Var[zeta] = c (I - 11^T / N)`.
    pub fn variance_scale(&self) -> f64 {
        let n_big = self.n_total as f64;
        let n = self.batch as f64;
        if self.replacement {
            1.0 / (n * n_big)
        } else if self.n_total == 1 {
            0.0
        } else {
            (n_big - n) / (n * n_big * (n_big - 1.0))
        }
    }

    /// Draws one minibatch of indices.
    pub fn draw_indices(&self, rng: &mut SimRng) -> Vec<usize> {
        if self.replacement {
            (0..self.batch)
                .map(|_| rng.random_range(0..self.n_total))
                .collect()
        } else {
            index::sample(rng, self.n_total, self.batch).into_vec()
        }
    }

    /// Selection vector: `(N/n)` times the number of times each index was drawn.
    pub fn selection_vector<T: Real>(&self, indices: &[usize]) -> Vec<T> {
        let w = T::from_usize_lossy(self.n_total) / T::from_usize_lossy(self.batch);
        let mut rho = vec![T::zero(); self.n_total];
        for &i in indices {
            rho[i] = rho[i] + w;
        }
        rho
    }
}

/// Dense mean vector and row-major covariance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseMoments<T> {
    pub dim: usize,
    pub mean: Vec<T>,
    pub covariance: Vec<T>,
}

impl<T: Real> NoiseMoments<T> {
    pub fn cov(&self, i: usize, j: usize) -> T {
        self.covariance[i * self.dim + j]
    }
}

/// Exact mean (zero) and covariance of `zeta = (rho - 1) / N`.
pub fn sampling_noise_moments<T: Real>(scheme: &SamplingScheme) -> Result<NoiseMoments<T>> {
    scheme.validate()?;
    let n = scheme.n_total;
    let c = scheme.variance_scale();
    let inv_n = 1.0 / n as f64;
    let diag = T::lit(c * (1.0 - inv_n));
    let off = T::lit(-c * inv_n);
    let mut covariance = vec![off; n * n];
    for i in 0..n {
        covariance[i * n + i] = diag;
    }
    Ok(NoiseMoments {
        dim: n,
        mean: vec![T::zero(); n],
        covariance,
    })
}

pub fn sample_zeta<T: Real>(scheme: &SamplingScheme, seed: u64) -> Result<Vec<T>> {
    scheme.validate()?;
    let mut rng = rng_from_seed(seed);
    Ok(zeta_from_rng(scheme, &mut rng))
}

fn zeta_from_rng<T: Real>(scheme: &SamplingScheme, rng: &mut SimRng) -> Vec<T> {
    let idx = scheme.draw_indices(rng);
    let inv_n = T::one() / T::from_usize_lossy(scheme.n_total);
    scheme
        .selection_vector::<T>(&idx)
        .into_iter()
        .map(|r| (r - T::one()) * inv_n)
        .collect()
}

/// Running first and second moments of vector draws, with the Monte Carlo
/// standard error of every covariance entry.
#[derive(Debug, Clone)]
pub struct MomentAccumulator {
    dim: usize,
    count: usize,
    sum: Vec<f64>,
    sum_outer: Vec<f64>,
    sum_outer_sq: Vec<f64>,
}

impl MomentAccumulator {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            count: 0,
            sum: vec![0.0; dim],
            sum_outer: vec![0.0; dim * dim],
            sum_outer_sq: vec![0.0; dim * dim],
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn push(&mut self, v: &[f64]) {
        debug_assert_eq!(v.len(), self.dim);
        self.count += 1;
        for (s, x) in self.sum.iter_mut().zip(v) {
            *s += x;
        }
        for i in 0..self.dim {
            let row = i * self.dim;
            for j in 0..self.dim {
                let p = v[i] * v[j];
                self.sum_outer[row + j] += p;
                self.sum_outer_sq[row + j] += p * p;
            }
        }
    }

    pub fn merge(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim);
        self.count += other.count;
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            *a += b;
        }
        for (a, b) in self.sum_outer.iter_mut().zip(&other.sum_outer) {
            *a += b;
        }
        for (a, b) in self.sum_outer_sq.iter_mut().zip(&other.sum_outer_sq) {
            *a += b;
        }
    }

    pub fn finish(&self) -> EmpiricalMoments {
        let d = self.dim;
        let m = self.count as f64;
        let mean: Vec<f64> = self.sum.iter().map(|s| s / m).collect();
        let mut covariance = vec![0.0; d * d];
        let mut covariance_se = vec![0.0; d * d];
        let mean_se = (0..d)
            .map(|i| {
                let var = self.sum_outer[i * d + i] / m - mean[i] * mean[i];
                (var.max(0.0) / m).sqrt()
            })
            .collect();
        for i in 0..d {
            for j in 0..d {
                let k = i * d + j;
                let raw = self.sum_outer[k] / m;
                covariance[k] = raw - mean[i] * mean[j];
                let var_prod = self.sum_outer_sq[k] / m - raw * raw;
                covariance_se[k] = (var_prod.max(0.0) / m).sqrt();
            }
        }
        EmpiricalMoments {
            dim: d,
            draws: self.count,
            mean,
            mean_se,
            covariance,
            covariance_se,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMoments {
    pub dim: usize,
    pub draws: usize,
    pub mean: Vec<f64>,
    pub mean_se: Vec<f64>,
    pub covariance: Vec<f64>,
    pub covariance_se: Vec<f64>,
}

impl EmpiricalMoments {
    /// Largest `|empirical - analytic| / se` over all entries. Entries with
    /// zero standard error must match to rounding.
    pub fn max_standardized_deviation(&self, analytic: &[f64]) -> f64 {
        let scale = analytic.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        self.covariance
            .iter()
            .zip(&self.covariance_se)
            .zip(analytic)
            .map(|((e, se), a)| {
                let d = (e - a).abs();
                if *se > 0.0 {
                    d / se
                } else if d <= 1e-12 * scale {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }

    /// `||empirical - analytic||_F / ||se||_F`, about one under the null.
    pub fn frobenius_standardized_deviation(&self, analytic: &[f64]) -> f64 {
        let num: f64 = self
            .covariance
            .iter()
            .zip(analytic)
            .map(|(e, a)| (e - a) * (e - a))
            .sum();
        let den: f64 = self.covariance_se.iter().map(|s| s * s).sum();
        if den == 0.0 {
            return if num == 0.0 { 0.0 } else { f64::INFINITY };
        }
        (num / den).sqrt()
    }

    /// Largest `|mean| / se` against a zero-mean hypothesis.
    pub fn max_mean_z(&self) -> f64 {
        self.mean
            .iter()
            .zip(&self.mean_se)
            .map(|(m, se)| if *se > 0.0 { m.abs() / se } else { 0.0 })
            .fold(0.0, f64::max)
    }
}

const CHUNK: usize = 1024;

/// Accumulates `draws` vectors produced by `f(rng)` in fixed-size chunks,
/// each chunk seeded from `(seed, chunk)`, merged in chunk order.
pub(crate) fn accumulate_parallel<F>(dim: usize, draws: usize, seed: u64, f: F) -> MomentAccumulator
where
    F: Fn(&mut SimRng, &mut Vec<f64>) + Sync,
{
    let chunks = draws.div_ceil(CHUNK);
    let parts: Vec<MomentAccumulator> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng_from_seed(derive_seed(seed, c as u64));
            let mut acc = MomentAccumulator::new(dim);
            let mut buf = Vec::with_capacity(dim);
            let take = CHUNK.min(draws - c * CHUNK);
            for _ in 0..take {
                buf.clear();
                f(&mut rng, &mut buf);
                acc.push(&buf);
            }
            acc
        })
        .collect();
    let mut total = MomentAccumulator::new(dim);
    for p in &parts {
        total.merge(p);
    }
    total
}

/// Monte Carlo moments of `zeta` over `draws` independent minibatches.
pub fn empirical_zeta_moments(
    scheme: &SamplingScheme,
    draws: usize,
    seed: u64,
) -> Result<EmpiricalMoments> {
    scheme.validate()?;
    if draws < 2 {
        return Err(Error::invalid("draws", "must be at least 2"));
    }
    let acc = accumulate_parallel(scheme.n_total, draws, seed, |rng, buf| {
        buf.extend(zeta_from_rng::<f64>(scheme, rng));
    });
    Ok(acc.finish())
}
