//! Euler-Maruyama simulation of `dw = -a w dt + sigma dB^H`.
//!
//! Each path (and each coordinate of a multi-dimensional path) draws its own
//! FGN stream from a seed derived from the master seed and its index, so
//! ensembles are reproducible under any thread schedule.

mod convergence;
mod drift;
mod fpt;
mod grid;

pub use convergence::{convergence_slope, ConvergenceResult};
pub use drift::{
    drift_distance_experiment, terminal_distances, DistanceRow, DriftConfig, DEFAULT_MAX_WORK,
    DRIFT_A,
};
pub use fpt::{first_passage_mc, FptBatch, FptSummary};
pub use grid::{
    analyze_fpt_grid, fpt_grid, FptGridAnalysis, FptGridCell, FptGridConfig, OrderingViolation,
    ESCAPE_GRID_HURST, ESCAPE_GRID_LEVELS,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fou::FouParams;
use crate::noise::FgnGenerator;
use crate::rng::{derive_seed, derive_seed2};
use crate::scalar::Real;

/// How FGN increments are scaled with the step size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NoiseScaling {
    /// Increment variance `dt^{2H}`: a discretization of the continuous
    /// process, consistent across resolutions.
    #[default]
    Physical,
    /// Increment variance `dt` for every H, so the per-step noise magnitude
    /// is the same across Hurst parameters.
    MatchedStep,
}

impl NoiseScaling {
    pub(crate) fn factor<T: Real>(self, dt: T, hurst: T) -> T {
        match self {
            NoiseScaling::Physical => dt.powf(hurst),
            NoiseScaling::MatchedStep => dt.sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig<T> {
    pub params: FouParams<T>,
    pub t_end: T,
    pub dt: T,
    pub n_paths: usize,
    pub master_seed: u64,
    pub dim: usize,
    #[serde(default)]
    pub scaling: NoiseScaling,
}

impl<T: Real> SimConfig<T> {
    pub fn new(params: FouParams<T>, t_end: T, dt: T, n_paths: usize, master_seed: u64) -> Result<Self> {
        let c = Self {
            params,
            t_end,
            dt,
            n_paths,
            master_seed,
            dim: 1,
            scaling: NoiseScaling::Physical,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::invalid("dt", format!("must be positive, got {}", self.dt)));
        }
        if !(self.t_end > self.dt) || !self.t_end.is_finite() {
            return Err(Error::invalid(
                "t_end",
                format!("must exceed dt = {}, got {}", self.dt, self.t_end),
            ));
        }
        if self.n_paths == 0 {
            return Err(Error::invalid("n_paths", "must be at least 1"));
        }
        if self.dim == 0 {
            return Err(Error::invalid("dim", "must be at least 1"));
        }
        Ok(())
    }

    /// Number of Euler steps, `round(t_end / dt)`.
    pub fn n_steps(&self) -> usize {
        (self.t_end / self.dt).round().to_usize().unwrap_or(0).max(1)
    }

    pub(crate) fn generator(&self) -> Result<FgnGenerator<T>> {
        FgnGenerator::new(self.params.hurst, self.n_steps(), T::one())
    }

    pub(crate) fn coordinate_seed(&self, path: usize, coord: usize) -> u64 {
        if self.dim == 1 {
            derive_seed(self.master_seed, path as u64)
        } else {
            derive_seed2(self.master_seed, path as u64, coord as u64)
        }
    }
}

/// One Euler step of the linear drift.
#[inline]
pub(crate) fn euler_step<T: Real>(w: T, a: T, dt: T, increment: T) -> T {
    w - a * w * dt + increment
}

/// Drives one coordinate from `w0` with the given scaled increments,
/// calling `visit(step_index, value)` after every step. Stops early when
/// `visit` returns `false`.
pub(crate) fn drive<T: Real, F: FnMut(usize, T) -> bool>(
    w0: T,
    a: T,
    dt: T,
    increments: &[T],
    mut visit: F,
) {
    let mut w = w0;
    for (k, &inc) in increments.iter().enumerate() {
        w = euler_step(w, a, dt, inc);
        if !visit(k + 1, w) {
            break;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble<T> {
    pub dim: usize,
    /// Row-major `n_paths x dim` terminal states.
    pub endpoints: Vec<T>,
    /// Full trajectories (`n_steps + 1` states, origin included) when
    /// requested; only for `dim == 1`.
    pub paths: Option<Vec<Vec<T>>>,
}

/// Simulates `n_paths` independent paths to `t_end`.
pub fn simulate_fou_paths<T: Real>(config: &SimConfig<T>, keep_paths: bool) -> Result<Ensemble<T>> {
    config.validate()?;
    if keep_paths && config.dim != 1 {
        return Err(Error::invalid("keep_paths", "full paths are only kept for dim = 1"));
    }
    let generator = config.generator()?;
    let FouParams { a, sigma, hurst, w0 } = config.params;
    let scale = sigma * config.scaling.factor(config.dt, hurst);
    let dt = config.dt;
    let n = config.n_steps();

    let rows: Vec<(Vec<T>, Option<Vec<T>>)> = (0..config.n_paths)
        .into_par_iter()
        .map(|p| {
            let mut end = Vec::with_capacity(config.dim);
            let mut path = keep_paths.then(|| {
                let mut v = Vec::with_capacity(n + 1);
                v.push(w0);
                v
            });
            for c in 0..config.dim {
                let mut inc = generator.sample_values(config.coordinate_seed(p, c));
                inc.iter_mut().for_each(|x| *x = *x * scale);
                let mut last = w0;
                drive(w0, a, dt, &inc, |_, w| {
                    last = w;
                    if let Some(v) = path.as_mut() {
                        v.push(w);
                    }
                    true
                });
                end.push(last);
            }
            (end, path)
        })
        .collect();

    let mut endpoints = Vec::with_capacity(config.n_paths * config.dim);
    let mut paths = keep_paths.then(Vec::new);
    for (end, path) in rows {
        endpoints.extend(end);
        if let (Some(all), Some(p)) = (paths.as_mut(), path) {
            all.push(p);
        }
    }
    Ok(Ensemble {
        dim: config.dim,
        endpoints,
        paths,
    })
}
