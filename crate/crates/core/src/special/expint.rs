use super::gamma::gamma_any;
use super::SpecialFnResult;
use crate::error::{Error, Result};
use crate::quadrature::exp_sinh;
use crate::scalar::Real;

const SERIES_T_MAX: f64 = 0.5;

/// Generalized exponential integral `E_p(t) = int_1^inf x^{-p} e^{-t x} dx`.
///
/// Small `t` with `p` away from the positive integers uses the convergent
/// series `Gamma(1-p) t^{p-1} - sum_k (-t)^k / (k! (1-p+k))`; everything
/// else integrates `(e^{-t}/t) int_0^inf (1 + u/t)^{-p} e^{-u} du`.
pub fn exp_integral_e<T: Real>(p: T, t: T) -> Result<SpecialFnResult<T>> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::invalid("t", format!("E_p(t) requires t > 0, got {t}")));
    }
    if !p.is_finite() {
        return Err(Error::invalid("p", "must be finite"));
    }
    let near_pos_int = p > T::lit(0.5) && (p - p.round()).abs() < T::lit(1e-3);
    if t < T::lit(SERIES_T_MAX) && !near_pos_int {
        Ok(series(p, t))
    } else {
        quadrature(p, t)
    }
}

fn series<T: Real>(p: T, t: T) -> SpecialFnResult<T> {
    let one = T::one();
    let lead = gamma_any(one - p) * t.powf(p - one);
    let mut sum = T::zero();
    let mut magnitude = lead.abs();
    // power = (-t)^k / k!
    let mut power = one;
    let mut k = 0usize;
    loop {
        let kk = T::from_usize_lossy(k);
        let term = power / (one - p + kk);
        sum = sum + term;
        magnitude = magnitude + term.abs();
        if term.abs() <= T::epsilon() * sum.abs().max(T::min_positive_value()) || k > 200 {
            break;
        }
        k += 1;
        power = power * (-t) / T::from_usize_lossy(k);
    }
    let value = lead - sum;
    SpecialFnResult::new(value, T::lit(8.0) * T::epsilon() * magnitude)
}

fn quadrature<T: Real>(p: T, t: T) -> Result<SpecialFnResult<T>> {
    let inv_t = t.recip();
    let r = exp_sinh(
        |u: T| (-p * (u * inv_t).ln_1p() - u).exp(),
        T::lit(T::QUAD_TOL),
    );
    let pref = (-t).exp() * inv_t;
    let value = r.value * pref;
    if !value.is_finite() {
        return Err(Error::Numerical(format!("E_{p}({t}) is not finite")));
    }
    let err = r.abs_error * pref + T::lit(8.0) * T::epsilon() * value.abs();
    Ok(SpecialFnResult::new(value, err))
}
