use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{drive, NoiseScaling};
use crate::error::{Error, Result};
use crate::noise::FgnGenerator;
use crate::rng::derive_seed2;

/// Curvature of the isotropic quadratic potential in the drift experiment.
pub const DRIFT_A: f64 = 2.0;
/// Default cap on `dim * steps` per Hurst value.
pub const DEFAULT_MAX_WORK: u64 = 5_000_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftConfig {
    pub hurst_list: Vec<f64>,
    pub dim: usize,
    pub sigma: f64,
    pub t_end: f64,
    pub dt: f64,
    pub seed: u64,
    /// Record the distance every this many steps (the final step is always
    /// recorded).
    pub sample_every: usize,
    pub scaling: NoiseScaling,
    pub max_work: u64,
}

impl DriftConfig {
    /// Defaults: record every step, per-step noise magnitude matched across
    /// Hurst values.
    pub fn new(hurst_list: Vec<f64>, dim: usize, sigma: f64, t_end: f64, dt: f64, seed: u64) -> Self {
        Self {
            hurst_list,
            dim,
            sigma,
            t_end,
            dt,
            seed,
            sample_every: 1,
            scaling: NoiseScaling::MatchedStep,
            max_work: DEFAULT_MAX_WORK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceRow {
    pub hurst: f64,
    pub t: f64,
    pub distance: f64,
}

/// Euclidean distance from the origin of a `dim`-dimensional path of
/// `dw = -2 w dt + sigma dB^H` started at zero, with an independent FGN
/// stream per coordinate.
pub fn drift_distance_experiment(config: &DriftConfig) -> Result<Vec<DistanceRow>> {
    if config.dim == 0 {
        return Err(Error::invalid("dim", "must be at least 1"));
    }
    if !(config.dt > 0.0) || !(config.t_end > config.dt) {
        return Err(Error::invalid("dt, t_end", "need 0 < dt < t_end"));
    }
    if !(config.sigma >= 0.0) {
        return Err(Error::invalid("sigma", "must be non-negative"));
    }
    if config.sample_every == 0 {
        return Err(Error::invalid("sample_every", "must be at least 1"));
    }
    let steps = (config.t_end / config.dt).round() as usize;
    let work = config.dim as u64 * steps as u64;
    if work > config.max_work {
        return Err(Error::ResourceLimit(format!(
            "dim * steps = {work} exceeds the cap of {}; lower dim or t_end/dt, or raise the cap",
            config.max_work
        )));
    }
    let samples: Vec<usize> = (1..=steps)
        .filter(|k| k % config.sample_every == 0 || *k == steps)
        .collect();

    let mut rows = Vec::with_capacity(config.hurst_list.len() * samples.len());
    for (hi, &h) in config.hurst_list.iter().enumerate() {
        let generator = FgnGenerator::new(h, steps, 1.0)?;
        let scale = config.sigma * config.scaling.factor(config.dt, h);
        const CHUNK: usize = 256;
        let partial: Vec<Vec<f64>> = (0..config.dim)
            .collect::<Vec<_>>()
            .par_chunks(CHUNK)
            .map(|coords| {
                let mut acc = vec![0.0f64; samples.len()];
                for &c in coords {
                    let mut inc = generator.sample_values(derive_seed2(config.seed, hi as u64, c as u64));
                    inc.iter_mut().for_each(|x| *x *= scale);
                    let mut next = 0usize;
                    drive(0.0, DRIFT_A, config.dt, &inc, |k, w| {
                        if next < samples.len() && samples[next] == k {
                            acc[next] += w * w;
                            next += 1;
                        }
                        true
                    });
                }
                acc
            })
            .collect();
        let mut total = vec![0.0f64; samples.len()];
        for part in &partial {
            for (t, p) in total.iter_mut().zip(part) {
                *t += p;
            }
        }
        for (k, sq) in samples.iter().zip(total) {
            rows.push(DistanceRow {
                hurst: h,
                t: *k as f64 * config.dt,
                distance: sq.sqrt(),
            });
        }
    }
    Ok(rows)
}

/// Last recorded distance for each Hurst value, in input order.
pub fn terminal_distances(rows: &[DistanceRow]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some(last) if last.0 == r.hurst => last.1 = r.distance,
            _ => out.push((r.hurst, r.distance)),
        }
    }
    out
}

impl DistanceRow {
    pub fn write_csv<W: std::io::Write>(rows: &[DistanceRow], mut w: W) -> Result<()> {
        writeln!(w, "hurst,t,distance")?;
        for r in rows {
            writeln!(w, "{},{},{}", r.hurst, r.t, r.distance)?;
        }
        Ok(())
    }
}
