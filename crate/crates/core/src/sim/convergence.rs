use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::drive;
use crate::error::{Error, Result};
use crate::fou::FouParams;
use crate::noise::FgnGenerator;
use crate::rng::derive_seed;
use crate::scalar::Real;
use crate::stats::linear_fit;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceResult<T> {
    pub hurst: T,
    pub slope: T,
    pub r_squared: T,
    /// Step sizes entering the fit (the finest step is the reference).
    pub dts: Vec<T>,
    pub errors: Vec<T>,
}

impl<T: Real + Serialize> ConvergenceResult<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Empirical strong order of the Euler scheme on `[0, t_end]`.
///
/// Every path draws one FGN stream on the finest grid; coarser grids sum
/// consecutive fine increments, so all resolutions see the same driving
/// path. The error at step `dt` is the mean over paths of the sup-norm
/// distance, on the coarse grid, from the finest-grid solution. The slope
/// of `ln error` on `ln dt` is returned.
pub fn convergence_slope<T: Real>(
    params: &FouParams<T>,
    dt_list: &[T],
    t_end: T,
    n_paths: usize,
    seed: u64,
) -> Result<ConvergenceResult<T>> {
    params.validate()?;
    if !(params.hurst > T::lit(0.5)) {
        return Err(Error::invalid(
            "hurst",
            "the strong-rate check needs H > 0.5",
        ));
    }
    if dt_list.len() < 3 {
        return Err(Error::invalid("dt_list", "need at least three step sizes"));
    }
    if dt_list.windows(2).any(|w| !(w[1] < w[0])) || !(dt_list[dt_list.len() - 1] > T::zero()) {
        return Err(Error::invalid("dt_list", "must be positive and strictly decreasing"));
    }
    if n_paths == 0 {
        return Err(Error::invalid("n_paths", "must be at least 1"));
    }
    let fine = dt_list[dt_list.len() - 1];
    let integer_ratio = |x: T| -> Result<usize> {
        let r = x / fine;
        let rounded = r.round();
        if (r - rounded).abs() > T::lit(1e-9) * r {
            return Err(Error::invalid(
                "dt_list",
                format!("{x} is not an integer multiple of the finest step {fine}"),
            ));
        }
        Ok(rounded.to_usize().unwrap_or(0))
    };
    let n_fine = integer_ratio(t_end)?;
    let ratios: Vec<usize> = dt_list[..dt_list.len() - 1]
        .iter()
        .map(|&d| integer_ratio(d))
        .collect::<Result<_>>()?;
    if let Some(&bad) = ratios.iter().find(|&&r| n_fine % r != 0) {
        return Err(Error::invalid(
            "dt_list",
            format!("t_end is not a whole number of steps at ratio {bad}"),
        ));
    }

    let generator = FgnGenerator::new(params.hurst, n_fine, fine)?;
    let FouParams { a, sigma, w0, .. } = *params;

    let per_path: Vec<Vec<T>> = (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let fine_inc: Vec<T> = generator
                .sample_values(derive_seed(seed, p as u64))
                .into_iter()
                .map(|x| x * sigma)
                .collect();
            let mut reference = Vec::with_capacity(n_fine + 1);
            reference.push(w0);
            drive(w0, a, fine, &fine_inc, |_, w| {
                reference.push(w);
                true
            });
            ratios
                .iter()
                .zip(dt_list)
                .map(|(&r, &dt)| {
                    let coarse = aggregate(&fine_inc, r);
                    let mut err = T::zero();
                    drive(w0, a, dt, &coarse, |k, w| {
                        err = err.max((w - reference[k * r]).abs());
                        true
                    });
                    err
                })
                .collect()
        })
        .collect();

    let m = ratios.len();
    let np = T::from_usize_lossy(n_paths);
    let errors: Vec<T> = (0..m)
        .map(|j| per_path.iter().map(|row| row[j]).sum::<T>() / np)
        .collect();
    let dts = dt_list[..m].to_vec();
    let lx: Vec<T> = dts.iter().map(|d| d.ln()).collect();
    let ly: Vec<T> = errors.iter().map(|e| e.ln()).collect();
    if ly.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate("zero strong error at some step size".into()));
    }
    let fit = linear_fit(&lx, &ly)?;
    Ok(ConvergenceResult {
        hurst: params.hurst,
        slope: fit.slope,
        r_squared: fit.r_squared,
        dts,
        errors,
    })
}

/// Sums consecutive groups of `ratio` fine increments.
pub(crate) fn aggregate<T: Real>(fine: &[T], ratio: usize) -> Vec<T> {
    fine.chunks_exact(ratio)
        .map(|c| c.iter().copied().fold(T::zero(), |s, x| s + x))
        .collect()
}
