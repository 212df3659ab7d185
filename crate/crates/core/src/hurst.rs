//! Rescaled-range (R/S) estimation of the Hurst exponent.
//!
//! For each window length `k` the series is cut into `m = floor(N/k)`
//! disjoint blocks (the trailing partial block is discarded), the R/S
//! statistic of every block is averaged into `q_k`, and the exponent is the
//! least-squares slope of `ln q_k` against `ln k`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{generate_stable, FgnGenerator};
use crate::rng::derive_seed2;
use crate::scalar::Real;
use crate::stats::{self, linear_fit};

pub const MIN_SERIES_LEN: usize = 64;
pub const MIN_WINDOWS: usize = 4;
/// A window is dropped when more than this fraction of its blocks is constant.
pub const MAX_DEGENERATE_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowStat<T> {
    pub k: usize,
    pub q_k: T,
    pub m_used: usize,
    pub m_skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HurstEstimate<T> {
    pub hurst: T,
    pub intercept: T,
    pub r_squared: T,
    pub windows: Vec<WindowStat<T>>,
    pub n_points: usize,
}

impl<T: Real + Serialize> HurstEstimate<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Which block lengths to use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WindowPolicy {
    /// Powers of two from `max(8, 2^floor(log2(N/32)))` up to `N/2`.
    #[default]
    Auto,
    /// `min, 2 min, 4 min, ...` while `<= max`.
    Doubling { min: usize, max: usize },
    Explicit(Vec<usize>),
}

impl WindowPolicy {
    pub fn windows(&self, n: usize) -> Vec<usize> {
        let doubling = |min: usize, max: usize| {
            let mut out = Vec::new();
            let mut k = min.max(2);
            while k <= max.min(n) {
                out.push(k);
                k *= 2;
            }
            out
        };
        match self {
            WindowPolicy::Auto => {
                let target = (n / 32).max(1);
                let pow = 1usize << (usize::BITS - 1 - target.leading_zeros());
                doubling(pow.max(8), n / 2)
            }
            WindowPolicy::Doubling { min, max } => doubling(*min, *max),
            WindowPolicy::Explicit(ks) => {
                let mut ks: Vec<usize> = ks.iter().copied().filter(|&k| k >= 2 && k <= n).collect();
                ks.sort_unstable();
                ks.dedup();
                ks
            }
        }
    }
}

/// R/S statistic of one block: range of the cumulative mean-adjusted sum
/// over the population standard deviation.
pub fn rs_statistic<T: Real>(block: &[T]) -> Result<T> {
    if block.len() < 2 {
        return Err(Error::invalid("block", "needs at least two values"));
    }
    block_rs(block).ok_or_else(|| Error::Degenerate("block has zero standard deviation".into()))
}

fn block_rs<T: Real>(block: &[T]) -> Option<T> {
    let first = block[0];
    if block.iter().all(|&x| x == first) {
        return None;
    }
    let k = T::from_usize_lossy(block.len());
    let mu = block.iter().copied().sum::<T>() / k;
    let mut z = T::zero();
    let mut zmax = T::neg_infinity();
    let mut zmin = T::infinity();
    let mut ss = T::zero();
    for &x in block {
        let y = x - mu;
        ss = ss + y * y;
        z = z + y;
        zmax = zmax.max(z);
        zmin = zmin.min(z);
    }
    let s = (ss / k).sqrt();
    if s == T::zero() {
        return None;
    }
    Some((zmax - zmin) / s)
}

/// Average R/S over the disjoint blocks of length `k`. `Ok(None)` means the
/// window was dropped for too many degenerate blocks.
fn window_stat<T: Real>(series: &[T], k: usize) -> Result<Option<WindowStat<T>>> {
    let m = series.len() / k;
    let mut sum = T::zero();
    let mut used = 0usize;
    for block in series.chunks_exact(k).take(m) {
        if let Some(q) = block_rs(block) {
            sum = sum + q;
            used += 1;
        }
    }
    let skipped = m - used;
    if used == 0 {
        return Err(Error::Degenerate(format!(
            "every block of length {k} is constant"
        )));
    }
    if skipped as f64 > MAX_DEGENERATE_FRACTION * m as f64 {
        return Ok(None);
    }
    Ok(Some(WindowStat {
        k,
        q_k: sum / T::from_usize_lossy(used),
        m_used: used,
        m_skipped: skipped,
    }))
}

pub fn estimate_hurst<T: Real>(series: &[T], policy: &WindowPolicy) -> Result<HurstEstimate<T>> {
    let n = series.len();
    if n < MIN_SERIES_LEN {
        return Err(Error::invalid(
            "series",
            format!("needs at least {MIN_SERIES_LEN} points, got {n}"),
        ));
    }
    if series.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("series", "contains non-finite values"));
    }
    let ks = policy.windows(n);
    if ks.len() < MIN_WINDOWS {
        return Err(Error::invalid(
            "window_spec",
            format!("{} window sizes for N = {n}; need at least {MIN_WINDOWS}", ks.len()),
        ));
    }
    let mut windows = Vec::with_capacity(ks.len());
    for k in ks {
        if let Some(w) = window_stat(series, k)? {
            windows.push(w);
        }
    }
    if windows.len() < MIN_WINDOWS {
        return Err(Error::Degenerate(format!(
            "only {} usable windows after dropping degenerate ones",
            windows.len()
        )));
    }
    let lk: Vec<T> = windows.iter().map(|w| T::from_usize_lossy(w.k).ln()).collect();
    let lq: Vec<T> = windows.iter().map(|w| w.q_k.ln()).collect();
    let fit = linear_fit(&lk, &lq)?;
    Ok(HurstEstimate {
        hurst: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        windows,
        n_points: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRow {
    /// True H for FGN rows, alpha for stable rows.
    pub parameter: f64,
    pub mean_estimate: f64,
    pub std_estimate: f64,
    pub reps: usize,
}

fn summarize(parameter: f64, estimates: &[f64]) -> CalibrationRow {
    CalibrationRow {
        parameter,
        mean_estimate: stats::mean(estimates),
        std_estimate: if estimates.len() > 1 {
            stats::std_dev(estimates, 1)
        } else {
            0.0
        },
        reps: estimates.len(),
    }
}

/// Mean and spread of the estimator on synthetic FGN for each grid value.
/// Replicate `r` of grid cell `i` uses seed `derive_seed2(master, i, r)`.
pub fn calibrate_estimator(
    h_grid: &[f64],
    n_points: usize,
    n_reps: usize,
    master_seed: u64,
    policy: &WindowPolicy,
) -> Result<Vec<CalibrationRow>> {
    if n_points < 1000 {
        return Err(Error::invalid("n_points", "calibration needs at least 1000 points"));
    }
    if n_reps == 0 {
        return Err(Error::invalid("n_reps", "must be at least 1"));
    }
    h_grid
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            let generator = FgnGenerator::new(h, n_points, 1.0)?;
            let est: Result<Vec<f64>> = (0..n_reps)
                .into_par_iter()
                .map(|r| {
                    let x = generator.sample_values(derive_seed2(master_seed, i as u64, r as u64));
                    Ok(estimate_hurst(&x, policy)?.hurst)
                })
                .collect();
            Ok(summarize(h, &est?))
        })
        .collect()
}

/// The same table for i.i.d. symmetric stable noise, which has no memory
/// and should read H = 1/2 for every alpha.
pub fn stable_null_table(
    alphas: &[f64],
    n_points: usize,
    n_reps: usize,
    master_seed: u64,
    policy: &WindowPolicy,
) -> Result<Vec<CalibrationRow>> {
    if n_reps == 0 {
        return Err(Error::invalid("n_reps", "must be at least 1"));
    }
    alphas
        .iter()
        .enumerate()
        .map(|(i, &alpha)| {
            let est: Result<Vec<f64>> = (0..n_reps)
                .into_par_iter()
                .map(|r| {
                    let s = generate_stable(alpha, n_points, derive_seed2(master_seed, i as u64, r as u64))?;
                    Ok(estimate_hurst(&s.values, policy)?.hurst)
                })
                .collect();
            Ok(summarize(alpha, &est?))
        })
        .collect()
}
