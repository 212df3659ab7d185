use serde::{Deserialize, Serialize};

use super::model::{Dataset, DatasetSpec, ModelSpec};
use super::sampling::{accumulate_parallel, sampling_noise_moments, EmpiricalMoments, SamplingScheme};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::scalar::Real;

/// Training aborts once the full-data loss exceeds this value.
pub const DIVERGENCE_LOSS: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub batch: usize,
    pub learning_rate: f64,
    pub steps: usize,
    pub seed: u64,
    pub replacement: bool,
    /// Log every this many iterations, starting with the first.
    pub log_every: usize,
}

impl TrainConfig {
    pub fn new(batch: usize, learning_rate: f64, steps: usize, seed: u64) -> Self {
        Self {
            batch,
            learning_rate,
            steps,
            seed,
            replacement: false,
            log_every: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::invalid("lr", "must be positive and finite"));
        }
        if self.steps == 0 {
            return Err(Error::invalid("steps", "must be at least 1"));
        }
        if self.log_every == 0 {
            return Err(Error::invalid("log_every", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub batch: usize,
    pub learning_rate: f64,
    pub seed: u64,
    pub model: String,
    pub n_total: usize,
    pub replacement: bool,
    pub log_every: usize,
}

/// Logged gradient noise: row `k` is `minibatch gradient - full gradient`
/// at the `k`-th logged iterate; `loss_curve[k]` is the full-data loss there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SgnTrace<T> {
    pub steps: usize,
    pub dim: usize,
    pub noise_vectors: Vec<T>,
    pub loss_curve: Vec<T>,
    pub meta: TraceMeta,
}

impl<T: Real> SgnTrace<T> {
    pub fn row(&self, k: usize) -> &[T] {
        &self.noise_vectors[k * self.dim..(k + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.steps).map(|k| self.noise_vectors[k * self.dim + j]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct TrainRun<T> {
    pub trace: SgnTrace<T>,
    pub final_params: Vec<T>,
    pub dataset: Dataset<T>,
}

fn mean_rows<T: Real>(g: &[T], p: usize, rows: impl Iterator<Item = usize>, count: usize, out: &mut [T]) {
    out.iter_mut().for_each(|v| *v = T::zero());
    for i in rows {
        for (o, v) in out.iter_mut().zip(&g[i * p..(i + 1) * p]) {
            *o = *o + *v;
        }
    }
    let inv = T::one() / T::from_usize_lossy(count);
    out.iter_mut().for_each(|v| *v = *v * inv);
}

/// Plain minibatch SGD with the full gradient recomputed at every iterate.
pub fn run_toy_trainer<T: Real>(
    model: &ModelSpec,
    dataset: &DatasetSpec,
    config: &TrainConfig,
) -> Result<TrainRun<T>> {
    model.validate()?;
    config.validate()?;
    let data = dataset.build::<T>()?;
    let scheme = SamplingScheme::new(data.n, config.batch, config.replacement)?;
    let p = model.n_params(data.d);
    let mut w = model.init_params::<T>(data.d, config.seed);
    let mut rng = rng_from_seed(config.seed);
    let lr = T::lit(config.learning_rate);

    let logged = config.steps.div_ceil(config.log_every);
    let mut noise_vectors = Vec::with_capacity(logged * p);
    let mut loss_curve = Vec::with_capacity(logged);
    let mut full = vec![T::zero(); p];
    let mut mini = vec![T::zero(); p];

    for step in 0..config.steps {
        let (g, loss) = model.per_example_gradients(&w, &data);
        if !loss.is_finite() || loss.as_f64() > DIVERGENCE_LOSS {
            return Err(Error::Diverged {
                step,
                loss: loss.as_f64(),
            });
        }
        let idx = scheme.draw_indices(&mut rng);
        mean_rows(&g, p, 0..data.n, data.n, &mut full);
        mean_rows(&g, p, idx.iter().copied(), idx.len(), &mut mini);
        if step % config.log_every == 0 {
            noise_vectors.extend(mini.iter().zip(&full).map(|(m, f)| *m - *f));
            loss_curve.push(loss);
        }
        for (wi, gi) in w.iter_mut().zip(&mini) {
            *wi = *wi - lr * *gi;
        }
    }

    Ok(TrainRun {
        trace: SgnTrace {
            steps: loss_curve.len(),
            dim: p,
            noise_vectors,
            loss_curve,
            meta: TraceMeta {
                batch: config.batch,
                learning_rate: config.learning_rate,
                seed: config.seed,
                model: model.describe(),
                n_total: data.n,
                replacement: config.replacement,
                log_every: config.log_every,
            },
        },
        final_params: w,
        dataset: data,
    })
}

pub fn train_toy_and_log<T: Real>(
    model: &ModelSpec,
    dataset: &DatasetSpec,
    config: &TrainConfig,
) -> Result<SgnTrace<T>> {
    run_toy_trainer(model, dataset, config).map(|r| r.trace)
}

/// Resampled-batch noise covariance at fixed parameters against the exact
/// `G Var[zeta] G^T`, where the columns of `G` are per-example gradients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceCheck {
    pub dim: usize,
    pub analytic: Vec<f64>,
    pub empirical: EmpiricalMoments,
    pub max_standardized_deviation: f64,
    pub frobenius_standardized_deviation: f64,
}

pub fn frozen_sgn_covariance<T: Real>(
    model: &ModelSpec,
    data: &Dataset<T>,
    params: &[T],
    scheme: &SamplingScheme,
    draws: usize,
    seed: u64,
) -> Result<CovarianceCheck> {
    scheme.validate()?;
    if scheme.n_total != data.n {
        return Err(Error::invalid(
            "n_total",
            format!("scheme covers {} examples, dataset has {}", scheme.n_total, data.n),
        ));
    }
    let p = model.n_params(data.d);
    if params.len() != p {
        return Err(Error::invalid("params", format!("expected {p} values, got {}", params.len())));
    }
    if draws < 2 {
        return Err(Error::invalid("draws", "must be at least 2"));
    }
    let (g, _) = model.per_example_gradients(params, data);
    let g: Vec<f64> = g.iter().map(|v| v.as_f64()).collect();
    let n = data.n;

    let vz = sampling_noise_moments::<f64>(scheme)?;
    // (G^T is N x p) -> V G^T, then G (V G^T).
    let mut vgt = vec![0.0; n * p];
    for i in 0..n {
        let out = &mut vgt[i * p..(i + 1) * p];
        for k in 0..n {
            let v = vz.covariance[i * n + k];
            if v != 0.0 {
                for (o, gk) in out.iter_mut().zip(&g[k * p..(k + 1) * p]) {
                    *o += v * gk;
                }
            }
        }
    }
    let mut analytic = vec![0.0; p * p];
    for i in 0..n {
        let gi = &g[i * p..(i + 1) * p];
        let vi = &vgt[i * p..(i + 1) * p];
        for a in 0..p {
            let row = &mut analytic[a * p..(a + 1) * p];
            let ga = gi[a];
            for (r, v) in row.iter_mut().zip(vi) {
                *r += ga * v;
            }
        }
    }

    let mut full = vec![0.0; p];
    mean_rows(&g, p, 0..n, n, &mut full);
    let acc = accumulate_parallel(p, draws, seed, |rng, buf| {
        let idx = scheme.draw_indices(rng);
        let mut mini = vec![0.0; p];
        mean_rows(&g, p, idx.iter().copied(), idx.len(), &mut mini);
        buf.extend(mini.iter().zip(&full).map(|(m, f)| m - f));
    });
    let empirical = acc.finish();
    Ok(CovarianceCheck {
        dim: p,
        max_standardized_deviation: empirical.max_standardized_deviation(&analytic),
        frobenius_standardized_deviation: empirical.frobenius_standardized_deviation(&analytic),
        analytic,
        empirical,
    })
}
