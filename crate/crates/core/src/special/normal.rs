use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf;

use crate::scalar::Real;

/// Standard normal CDF.
pub fn normal_cdf<T: Real>(x: T) -> T {
    T::lit(0.5 * erf::erfc(-x.as_f64() / std::f64::consts::SQRT_2))
}

/// Standard normal upper tail, accurate far into the tail.
pub fn normal_sf<T: Real>(x: T) -> T {
    T::lit(0.5 * erf::erfc(x.as_f64() / std::f64::consts::SQRT_2))
}

/// Standard normal quantile; `p` must lie in (0, 1).
pub fn normal_quantile<T: Real>(p: T) -> T {
    let n = Normal::standard();
    T::lit(n.inverse_cdf(p.as_f64()))
}
