//! Special functions for the fractional OU closed form: Gamma, the
//! generalized exponential integral `E_p` and Kummer's confluent
//! hypergeometric function `M(a, b, t)`.

mod expint;
mod gamma;
mod kummer;
mod normal;

pub use expint::exp_integral_e;
pub use gamma::{gamma_fn, ln_gamma};
pub use kummer::{kummer_m, kummer_m_asymptotic, kummer_m_scaled, ln_kummer_m};
pub use normal::{normal_cdf, normal_quantile, normal_sf};

use serde::{Deserialize, Serialize};

/// A value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialFnResult<T> {
    pub value: T,
    pub est_abs_error: T,
}

impl<T: crate::Real> SpecialFnResult<T> {
    pub(crate) fn new(value: T, est_abs_error: T) -> Self {
        Self {
            value,
            est_abs_error,
        }
    }
}
