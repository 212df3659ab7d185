use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};
use crate::scalar::Real;

/// Largest dataset for which the trainer recomputes the full gradient.
pub const MAX_DATASET: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub n_samples: usize,
    pub dim: usize,
    pub noise_sd: f64,
    pub seed: u64,
}

impl Default for DatasetSpec {
    fn default() -> Self {
        Self {
            n_samples: 1024,
            dim: 64,
            noise_sd: 0.5,
            seed: 2021,
        }
    }
}

/// Row-major design matrix with targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    pub n: usize,
    pub d: usize,
    pub x: Vec<T>,
    pub y: Vec<T>,
}

impl<T: Real> Dataset<T> {
    pub fn row(&self, i: usize) -> &[T] {
        &self.x[i * self.d..(i + 1) * self.d]
    }
}

impl DatasetSpec {
    /// Gaussian design, `y = X beta + eps` with `beta ~ N(0, I/d)`.
    pub fn build<T: Real>(&self) -> Result<Dataset<T>> {
        if self.n_samples == 0 || self.n_samples > MAX_DATASET {
            return Err(Error::invalid(
                "n_samples",
                format!("must lie in [1, {MAX_DATASET}], got {}", self.n_samples),
            ));
        }
        if self.dim == 0 {
            return Err(Error::invalid("dim", "must be at least 1"));
        }
        if !(self.noise_sd >= 0.0 && self.noise_sd.is_finite()) {
            return Err(Error::invalid("noise_sd", "must be finite and non-negative"));
        }
        let mut rng = rng_from_seed(self.seed);
        let scale = 1.0 / (self.dim as f64).sqrt();
        let beta: Vec<f64> = (0..self.dim)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                scale * z
            })
            .collect();
        let mut x = Vec::with_capacity(self.n_samples * self.dim);
        let mut y = Vec::with_capacity(self.n_samples);
        for _ in 0..self.n_samples {
            let row: Vec<f64> = (0..self.dim).map(|_| StandardNormal.sample(&mut rng)).collect();
            let eps: f64 = StandardNormal.sample(&mut rng);
            let target = row.iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>() + self.noise_sd * eps;
            x.extend(row.into_iter().map(T::lit));
            y.push(T::lit(target));
        }
        Ok(Dataset {
            n: self.n_samples,
            d: self.dim,
            x,
            y,
        })
    }
}

/// Squared-error regressors with hand-written gradients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Linear,
    /// `tanh` hidden layer followed by a linear read-out.
    Mlp { hidden: usize },
}

impl ModelSpec {
    pub fn describe(&self) -> String {
        match self {
            ModelSpec::Linear => "linear".into(),
            ModelSpec::Mlp { hidden } => format!("mlp(hidden={hidden}, tanh)"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let ModelSpec::Mlp { hidden: 0 } = self {
            return Err(Error::invalid("hidden", "must be at least 1"));
        }
        Ok(())
    }

    pub fn n_params(&self, input: usize) -> usize {
        match *self {
            ModelSpec::Linear => input,
            ModelSpec::Mlp { hidden } => hidden * input + 2 * hidden + 1,
        }
    }

    pub fn init_params<T: Real>(&self, input: usize, seed: u64) -> Vec<T> {
        let mut rng = rng_from_seed(derive_seed(seed, 0xA11CE));
        let mut normal = |sd: f64| -> T {
            let z: f64 = StandardNormal.sample(&mut rng);
            T::lit(sd * z)
        };
        match *self {
            ModelSpec::Linear => vec![T::zero(); input],
            ModelSpec::Mlp { hidden } => {
                let mut p = Vec::with_capacity(self.n_params(input));
                let s1 = 1.0 / (input as f64).sqrt();
                for _ in 0..hidden * input {
                    p.push(normal(s1));
                }
                p.extend(std::iter::repeat_n(T::zero(), hidden));
                let s2 = 1.0 / (hidden as f64).sqrt();
                for _ in 0..hidden {
                    p.push(normal(s2));
                }
                p.push(T::zero());
                p
            }
        }
    }

    pub fn predict<T: Real>(&self, params: &[T], x: &[T]) -> T {
        match *self {
            ModelSpec::Linear => dot(params, x),
            ModelSpec::Mlp { hidden } => {
                let d = x.len();
                let (w1, rest) = params.split_at(hidden * d);
                let (b1, rest) = rest.split_at(hidden);
                let (w2, b2) = rest.split_at(hidden);
                let mut out = b2[0];
                for j in 0..hidden {
                    let h = (dot(&w1[j * d..(j + 1) * d], x) + b1[j]).tanh();
                    out = out + w2[j] * h;
                }
                out
            }
        }
    }

    /// Loss `(f(x) - y)^2 / 2` of one example; its gradient overwrites `grad`.
    pub fn example_loss_grad<T: Real>(&self, params: &[T], x: &[T], y: T, grad: &mut [T]) -> T {
        match *self {
            ModelSpec::Linear => {
                let r = dot(params, x) - y;
                for (g, xi) in grad.iter_mut().zip(x) {
                    *g = r * *xi;
                }
                T::lit(0.5) * r * r
            }
            ModelSpec::Mlp { hidden } => {
                let d = x.len();
                let (w1, rest) = params.split_at(hidden * d);
                let (b1, rest) = rest.split_at(hidden);
                let (w2, b2) = rest.split_at(hidden);
                let h: Vec<T> = (0..hidden)
                    .map(|j| (dot(&w1[j * d..(j + 1) * d], x) + b1[j]).tanh())
                    .collect();
                let r = dot(w2, &h) + b2[0] - y;
                let (gw1, grest) = grad.split_at_mut(hidden * d);
                let (gb1, grest) = grest.split_at_mut(hidden);
                let (gw2, gb2) = grest.split_at_mut(hidden);
                gb2[0] = r;
                for j in 0..hidden {
                    gw2[j] = r * h[j];
                    let dz = r * w2[j] * (T::one() - h[j] * h[j]);
                    gb1[j] = dz;
                    for (g, xi) in gw1[j * d..(j + 1) * d].iter_mut().zip(x) {
                        *g = dz * *xi;
                    }
                }
                T::lit(0.5) * r * r
            }
        }
    }

    /// Mean loss over the whole dataset.
    pub fn full_loss<T: Real>(&self, params: &[T], data: &Dataset<T>) -> T {
        let total: T = (0..data.n)
            .map(|i| {
                let r = self.predict(params, data.row(i)) - data.y[i];
                T::lit(0.5) * r * r
            })
            .sum();
        total / T::from_usize_lossy(data.n)
    }

    /// Per-example gradients as an `N x p` row-major matrix, plus the mean loss.
    pub fn per_example_gradients<T: Real>(&self, params: &[T], data: &Dataset<T>) -> (Vec<T>, T) {
        let p = params.len();
        let mut g = vec![T::zero(); data.n * p];
        let mut loss = T::zero();
        for i in 0..data.n {
            loss = loss + self.example_loss_grad(params, data.row(i), data.y[i], &mut g[i * p..(i + 1) * p]);
        }
        (g, loss / T::from_usize_lossy(data.n))
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (x, y)| s + *x * *y)
}
