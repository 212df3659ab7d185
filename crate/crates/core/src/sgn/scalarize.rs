use rand::seq::index;
use serde::{Deserialize, Serialize};

use super::trainer::SgnTrace;
use crate::error::{Error, Result};
use crate::hurst::{estimate_hurst, WindowPolicy};
use crate::rng::rng_from_seed;
use crate::scalar::Real;

/// Number of coordinates averaged by the default Hurst summary.
pub const DEFAULT_COORDINATES: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "selector", rename_all = "snake_case")]
pub enum Scalarization {
    Coordinate(usize),
    Norm,
    /// Inner product with the direction of the given vector.
    Projection(Vec<f64>),
}

pub fn scalarize_trace<T: Real>(trace: &SgnTrace<T>, mode: &Scalarization) -> Result<Vec<T>> {
    match mode {
        Scalarization::Coordinate(j) => {
            if *j >= trace.dim {
                return Err(Error::invalid(
                    "coordinate",
                    format!("index {j} out of range for dimension {}", trace.dim),
                ));
            }
            Ok(trace.column(*j))
        }
        Scalarization::Norm => Ok((0..trace.steps)
            .map(|k| trace.row(k).iter().map(|v| *v * *v).sum::<T>().sqrt())
            .collect()),
        Scalarization::Projection(u) => {
            if u.len() != trace.dim {
                return Err(Error::invalid(
                    "projection",
                    format!("vector has length {}, trace dimension is {}", u.len(), trace.dim),
                ));
            }
            let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(Error::invalid("projection", "vector must be nonzero and finite"));
            }
            let unit: Vec<T> = u.iter().map(|v| T::lit(v / norm)).collect();
            Ok((0..trace.steps)
                .map(|k| trace.row(k).iter().zip(&unit).map(|(a, b)| *a * *b).sum())
                .collect())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinateHurstSummary {
    pub coordinates: Vec<usize>,
    /// One entry per coordinate; `None` where the estimator refused the series.
    pub estimates: Vec<Option<f64>>,
    pub mean: f64,
    pub std: f64,
}

/// Estimates H on up to `count` uniformly chosen coordinates and reports the
/// mean and spread of the estimates that succeeded.
pub fn coordinate_hurst_summary<T: Real>(
    trace: &SgnTrace<T>,
    count: usize,
    seed: u64,
    policy: &WindowPolicy,
) -> Result<CoordinateHurstSummary> {
    if count == 0 || trace.dim == 0 {
        return Err(Error::invalid("count", "need at least one coordinate"));
    }
    let mut rng = rng_from_seed(seed);
    let mut coordinates = index::sample(&mut rng, trace.dim, count.min(trace.dim)).into_vec();
    coordinates.sort_unstable();
    let estimates: Vec<Option<f64>> = coordinates
        .iter()
        .map(|&j| {
            estimate_hurst(&trace.column(j), policy)
                .ok()
                .map(|e| e.hurst.as_f64())
        })
        .collect();
    let ok: Vec<f64> = estimates.iter().flatten().copied().collect();
    if ok.is_empty() {
        return Err(Error::Degenerate(
            "no coordinate yielded a Hurst estimate".into(),
        ));
    }
    let mean = ok.iter().sum::<f64>() / ok.len() as f64;
    let std = if ok.len() > 1 {
        (ok.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (ok.len() - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(CoordinateHurstSummary {
        coordinates,
        estimates,
        mean,
        std,
    })
}
