use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{drive, SimConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// First-passage samples from `first_passage_mc`.
///
/// A path is censored when it has not reached the boundary strictly before
/// `t_end`; its time is then recorded as `t_end`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FptBatch<T> {
    pub times: Vec<T>,
    pub censored: Vec<bool>,
    pub boundary: T,
    pub config: SimConfig<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FptSummary {
    pub n_paths: usize,
    pub n_censored: usize,
    pub censored_fraction: f64,
    /// Mean over paths that exited; NaN (serialized as null) if none did.
    pub mean_uncensored: f64,
    /// Mean with censored paths counted at `t_end`.
    pub restricted_mean: f64,
}

impl<T: Real> FptBatch<T> {
    pub fn summary(&self) -> FptSummary {
        let n = self.times.len();
        let n_censored = self.censored.iter().filter(|&&c| c).count();
        let exited: Vec<f64> = self
            .times
            .iter()
            .zip(&self.censored)
            .filter(|(_, &c)| !c)
            .map(|(t, _)| t.as_f64())
            .collect();
        let mean_uncensored = if exited.is_empty() {
            f64::NAN
        } else {
            exited.iter().sum::<f64>() / exited.len() as f64
        };
        FptSummary {
            n_paths: n,
            n_censored,
            censored_fraction: n_censored as f64 / n as f64,
            mean_uncensored,
            restricted_mean: self.times.iter().map(|t| t.as_f64()).sum::<f64>() / n as f64,
        }
    }

    /// CSV with header `path_id,time,censored`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "path_id,time,censored")?;
        for (i, (t, c)) in self.times.iter().zip(&self.censored).enumerate() {
            writeln!(w, "{i},{},{}", t.as_f64(), u8::from(*c))?;
        }
        Ok(())
    }
}

/// Monte Carlo first passage out of `(-boundary, boundary)` (Euclidean norm
/// for `dim > 1`), checked at grid points only.
pub fn first_passage_mc<T: Real>(config: &SimConfig<T>, boundary: T) -> Result<FptBatch<T>> {
    config.validate()?;
    if !(boundary > config.params.w0.abs()) {
        return Err(Error::invalid(
            "boundary",
            format!(
                "must exceed |w0| = {}, got {boundary}",
                config.params.w0.abs()
            ),
        ));
    }
    let generator = config.generator()?;
    let p = config.params;
    let scale = p.sigma * config.scaling.factor(config.dt, p.hurst);
    let n = config.n_steps();
    let dt = config.dt;

    let results: Vec<Option<usize>> = (0..config.n_paths)
        .into_par_iter()
        .map(|path| {
            if config.dim == 1 {
                let mut inc = generator.sample_values(config.coordinate_seed(path, 0));
                inc.iter_mut().for_each(|x| *x = *x * scale);
                let mut hit = None;
                drive(p.w0, p.a, dt, &inc, |k, w| {
                    if w.abs() >= boundary && k < n {
                        hit = Some(k);
                        false
                    } else {
                        true
                    }
                });
                hit
            } else {
                let mut sq = vec![T::zero(); n + 1];
                for c in 0..config.dim {
                    let mut inc = generator.sample_values(config.coordinate_seed(path, c));
                    inc.iter_mut().for_each(|x| *x = *x * scale);
                    drive(p.w0, p.a, dt, &inc, |k, w| {
                        sq[k] = sq[k] + w * w;
                        true
                    });
                }
                let b2 = boundary * boundary;
                (1..n).find(|&k| sq[k] >= b2)
            }
        })
        .collect();

    let t_end = config.t_end;
    let times = results
        .iter()
        .map(|r| match r {
            Some(k) => T::from_usize_lossy(*k) * dt,
            None => t_end,
        })
        .collect();
    let censored = results.iter().map(Option::is_none).collect();
    Ok(FptBatch {
        times,
        censored,
        boundary,
        config: *config,
    })
}
