use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::scalar::Real;

/// I.i.d. symmetric alpha-stable samples with unit scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StableSeries<T> {
    pub alpha: T,
    pub values: Vec<T>,
    pub seed: u64,
}

/// Symmetric (beta = 0) stable samples via the Chambers-Mallows-Stuck map
/// of a uniform angle and a unit exponential. `alpha = 2` is Gaussian with
/// variance 2; `alpha = 1` is standard Cauchy.
pub fn generate_stable<T: Real>(alpha: T, length: usize, seed: u64) -> Result<StableSeries<T>> {
    if !(alpha > T::zero() && alpha <= T::lit(2.0)) {
        return Err(Error::invalid(
            "alpha",
            format!("must lie in (0, 2], got {alpha}"),
        ));
    }
    if length == 0 {
        return Err(Error::invalid("length", "must be at least 1"));
    }
    let a = alpha.as_f64();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut rng = rng_from_seed(seed);
    let values = (0..length)
        .map(|_| {
            let v: f64 = loop {
                let u: f64 = rng.random_range(-half_pi..half_pi);
                if u > -half_pi {
                    break u;
                }
            };
            let w: f64 = Exp1.sample(&mut rng);
            let x = if (a - 1.0).abs() < 1e-12 {
                v.tan()
            } else {
                (a * v).sin() / v.cos().powf(1.0 / a)
                    * (((1.0 - a) * v).cos() / w).powf((1.0 - a) / a)
            };
            T::lit(x)
        })
        .collect();
    Ok(StableSeries {
        alpha,
        values,
        seed,
    })
}
