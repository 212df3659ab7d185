use std::sync::Arc;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};
use crate::scalar::Real;

/// Largest length accepted by the O(n^2) Hosking generator.
pub const HOSKING_MAX_LEN: usize = 4096;

/// Relative size below which negative circulant eigenvalues are rounding noise.
const EIGEN_CLAMP_REL: f64 = 1e-10;

/// A realized fractional Gaussian noise series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FgnSeries<T> {
    pub hurst: T,
    pub step_dt: T,
    pub values: Vec<T>,
    pub seed: u64,
}

impl<T: Real> FgnSeries<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Discrete FBM path `B_{k dt}` for `k = 1..=n` (the origin is implicit).
    pub fn to_fbm(&self) -> Vec<T> {
        fgn_to_fbm(&self.values)
    }
}

pub(crate) fn check_hurst<T: Real>(hurst: T) -> Result<()> {
    if !(hurst > T::zero() && hurst < T::one()) {
        return Err(Error::invalid(
            "hurst",
            format!("must lie strictly inside (0, 1), got {hurst}"),
        ));
    }
    Ok(())
}

/// Autocovariance of unit-step FGN:
/// `gamma(k) = (|k+1|^{2H} + |k-1|^{2H} - 2|k|^{2H}) / 2`.
pub fn fgn_autocovariance<T: Real>(hurst: T, lag: usize) -> Result<T> {
    check_hurst(hurst)?;
    Ok(autocov_unchecked(hurst, lag))
}

fn autocov_unchecked<T: Real>(hurst: T, lag: usize) -> T {
    let two_h = hurst + hurst;
    let k = T::from_usize_lossy(lag);
    let one = T::one();
    let km1 = (k - one).abs();
    T::lit(0.5) * ((k + one).powf(two_h) + km1.powf(two_h) - T::lit(2.0) * k.powf(two_h))
}

/// Prefix sums of the increments.
pub fn fgn_to_fbm<T: Real>(values: &[T]) -> Vec<T> {
    let mut acc = T::zero();
    values
        .iter()
        .map(|&v| {
            acc = acc + v;
            acc
        })
        .collect()
}

/// Reusable circulant-embedding sampler for a fixed `(H, n, dt)`.
///
/// Holds the square-rooted, normalized spectrum of the `2n`-point circulant
/// that embeds the FGN covariance, plus the FFT plan.
#[derive(Clone)]
pub struct FgnGenerator<T: Real> {
    hurst: T,
    len: usize,
    step_dt: T,
    scale: T,
    sqrt_eigen: Vec<T>,
    fft: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for FgnGenerator<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FgnGenerator")
            .field("hurst", &self.hurst)
            .field("len", &self.len)
            .field("step_dt", &self.step_dt)
            .finish()
    }
}

impl<T: Real> FgnGenerator<T> {
    pub fn new(hurst: T, len: usize, step_dt: T) -> Result<Self> {
        check_hurst(hurst)?;
        if len == 0 {
            return Err(Error::invalid("length", "must be at least 1"));
        }
        if !(step_dt > T::zero()) || !step_dt.is_finite() {
            return Err(Error::invalid("step_dt", format!("must be positive, got {step_dt}")));
        }
        let m = 2 * len;
        let mut row: Vec<Complex<T>> = (0..m)
            .map(|j| {
                let lag = if j <= len { j } else { m - j };
                Complex::new(autocov_unchecked(hurst, lag), T::zero())
            })
            .collect();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        fft.process(&mut row);

        let max = row.iter().map(|c| c.re).fold(T::zero(), T::max);
        let tol = T::lit(EIGEN_CLAMP_REL) * max;
        let mm = T::from_usize_lossy(m);
        let mut sqrt_eigen = Vec::with_capacity(m);
        for c in &row {
            let lambda = c.re;
            if lambda < -tol {
                return Err(Error::NegativeEigenvalue {
                    value: lambda.as_f64(),
                    max: max.as_f64(),
                });
            }
            sqrt_eigen.push((lambda.max(T::zero()) / mm).sqrt());
        }
        Ok(Self {
            hurst,
            len,
            step_dt,
            scale: step_dt.powf(hurst),
            sqrt_eigen,
            fft,
        })
    }

    pub fn hurst(&self) -> T {
        self.hurst
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn step_dt(&self) -> T {
        self.step_dt
    }

    /// Draws one series of increments, each with variance `dt^{2H}`.
    pub fn sample_values(&self, seed: u64) -> Vec<T> {
        let mut rng = rng_from_seed(seed);
        let mut buf: Vec<Complex<T>> = self
            .sqrt_eigen
            .iter()
            .map(|&s| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex::new(s * T::lit(re), s * T::lit(im))
            })
            .collect();
        self.fft.process(&mut buf);
        buf.truncate(self.len);
        buf.into_iter().map(|c| c.re * self.scale).collect()
    }

    pub fn sample(&self, seed: u64) -> FgnSeries<T> {
        FgnSeries {
            hurst: self.hurst,
            step_dt: self.step_dt,
            values: self.sample_values(seed),
            seed,
        }
    }
}

/// Exact FGN by circulant embedding; deterministic for a fixed seed.
pub fn generate_fgn<T: Real>(hurst: T, length: usize, step_dt: T, seed: u64) -> Result<FgnSeries<T>> {
    Ok(FgnGenerator::new(hurst, length, step_dt)?.sample(seed))
}

/// `count` independent series whose seeds derive from `master_seed`.
pub fn generate_fgn_batch<T: Real>(
    hurst: T,
    length: usize,
    step_dt: T,
    master_seed: u64,
    count: usize,
) -> Result<Vec<FgnSeries<T>>> {
    let generator = FgnGenerator::new(hurst, length, step_dt)?;
    Ok((0..count)
        .into_par_iter()
        .map(|i| generator.sample(derive_seed(master_seed, i as u64)))
        .collect())
}

/// Exact FGN by sequential Durbin-Levinson factorization of the Toeplitz
/// covariance (Hosking's method). O(n^2); limited to [`HOSKING_MAX_LEN`].
pub fn generate_fgn_hosking<T: Real>(
    hurst: T,
    length: usize,
    step_dt: T,
    seed: u64,
) -> Result<FgnSeries<T>> {
    check_hurst(hurst)?;
    if length == 0 || length > HOSKING_MAX_LEN {
        return Err(Error::invalid(
            "length",
            format!("Hosking generator needs 1..={HOSKING_MAX_LEN}, got {length}"),
        ));
    }
    if !(step_dt > T::zero()) {
        return Err(Error::invalid("step_dt", "must be positive"));
    }
    let h = hurst.as_f64();
    let gamma: Vec<f64> = (0..length).map(|k| autocov_unchecked(h, k)).collect();
    let mut rng = rng_from_seed(seed);
    let mut x = Vec::with_capacity(length);
    let mut phi: Vec<f64> = Vec::with_capacity(length);
    let mut prev: Vec<f64> = Vec::with_capacity(length);
    let mut v = gamma[0];
    let z: f64 = StandardNormal.sample(&mut rng);
    x.push(v.sqrt() * z);
    for i in 1..length {
        let acc: f64 = (1..i).map(|j| prev[j - 1] * gamma[i - j]).sum();
        let kappa = (gamma[i] - acc) / v;
        phi.clear();
        for j in 1..i {
            phi.push(prev[j - 1] - kappa * prev[i - j - 1]);
        }
        phi.push(kappa);
        v *= 1.0 - kappa * kappa;
        if v <= 0.0 {
            return Err(Error::Numerical("innovation variance became non-positive".into()));
        }
        let pred: f64 = (1..=i).map(|j| phi[j - 1] * x[i - j]).sum();
        let z: f64 = StandardNormal.sample(&mut rng);
        x.push(pred + v.sqrt() * z);
        std::mem::swap(&mut phi, &mut prev);
    }
    let scale = step_dt.powf(hurst);
    Ok(FgnSeries {
        hurst,
        step_dt,
        values: x.into_iter().map(|v| T::lit(v) * scale).collect(),
        seed,
    })
}
