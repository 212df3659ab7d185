//! Double-exponential quadrature.
//!
//! `tanh_sinh_unit` integrates over (0, 1) and hands the integrand both `x`
//! and `1 - x` computed without cancellation, which keeps endpoint
//! singularities of the form `x^p (1-x)^q` accurate. `exp_sinh` integrates
//! over (0, inf) for integrands that decay at least exponentially.
//!
//! Both halve the step until two successive levels agree; the difference of
//! the last two levels is returned as the error estimate.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: T,
    pub levels: usize,
}

const MAX_LEVEL: usize = 10;

fn converged<T: Real>(value: T, abs_error: T, rel_tol: T) -> bool {
    abs_error <= rel_tol * value.abs().max(T::min_positive_value())
}

/// Integrates `f(x, 1 - x)` over the open unit interval.
pub fn tanh_sinh_unit<T, F>(f: F, rel_tol: T) -> QuadResult<T>
where
    T: Real,
    F: Fn(T, T) -> T,
{
    let half_pi = T::FRAC_PI_2();
    let two = T::lit(2.0);
    let t_max = T::lit(if T::QUAD_TOL < 1e-10 { 4.0 } else { 3.0 });

    // x = 1/(1+e^{-2s}), 1-x = 1/(1+e^{2s}), s = pi/2 sinh(t)
    let node = |t: T| -> (T, T, T) {
        let s = half_pi * t.sinh();
        let e = (-two * s.abs()).exp();
        let small = e / (T::one() + e);
        let large = T::one() / (T::one() + e);
        let (x, xc) = if s >= T::zero() {
            (large, small)
        } else {
            (small, large)
        };
        // dx/dt = pi cosh t * x (1 - x)
        let w = two * half_pi * t.cosh() * small * large;
        (x, xc, w)
    };
    let eval = |t: T| -> T {
        let (x, xc, w) = node(t);
        if w == T::zero() || x <= T::zero() || xc <= T::zero() {
            return T::zero();
        }
        let v = f(x, xc) * w;
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };

    let mut h = T::one();
    let mut sum = eval(T::zero());
    let mut k = T::one();
    while k * h <= t_max {
        sum = sum + eval(k * h) + eval(-k * h);
        k = k + T::one();
    }
    let mut estimate = sum * h;
    let mut abs_error = estimate.abs();
    for level in 1..=MAX_LEVEL {
        h = h / two;
        // only odd multiples are new
        let mut j = T::one();
        while j * h <= t_max {
            sum = sum + eval(j * h) + eval(-j * h);
            j = j + two;
        }
        let next = sum * h;
        abs_error = (next - estimate).abs();
        estimate = next;
        if level >= 3 && converged(next, abs_error, rel_tol) {
            return QuadResult {
                value: estimate,
                abs_error,
                levels: level,
            };
        }
    }
    QuadResult {
        value: estimate,
        abs_error,
        levels: MAX_LEVEL,
    }
}

/// Integrates `f(u)` over (0, inf) with the exp-sinh map u = exp(pi/2 sinh t).
pub fn exp_sinh<T, F>(f: F, rel_tol: T) -> QuadResult<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let half_pi = T::FRAC_PI_2();
    let two = T::lit(2.0);
    let t_lo = T::lit(-4.5);
    let t_hi = T::lit(3.5);
    let eval = |t: T| -> T {
        let u = (half_pi * t.sinh()).exp();
        let w = half_pi * t.cosh() * u;
        if !u.is_finite() || u == T::zero() {
            return T::zero();
        }
        let v = f(u) * w;
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    let mut h = T::lit(0.5);
    let mut sum = T::zero();
    let mut t = t_lo;
    while t <= t_hi {
        sum = sum + eval(t);
        t = t + h;
    }
    let mut estimate = sum * h;
    let mut abs_error = estimate.abs();
    for level in 1..=MAX_LEVEL {
        let mut t = t_lo + h / two;
        while t <= t_hi {
            sum = sum + eval(t);
            t = t + h;
        }
        h = h / two;
        let next = sum * h;
        abs_error = (next - estimate).abs();
        estimate = next;
        if level >= 3 && converged(next, abs_error, rel_tol) {
            return QuadResult {
                value: estimate,
                abs_error,
                levels: level,
            };
        }
    }
    QuadResult {
        value: estimate,
        abs_error,
        levels: MAX_LEVEL,
    }
}

/// Integrates `f` over the finite interval `[lo, hi]` via `tanh_sinh_unit`.
pub fn tanh_sinh<T, F>(f: F, lo: T, hi: T, rel_tol: T) -> QuadResult<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let width = hi - lo;
    let r = tanh_sinh_unit(|x, _| f(lo + width * x), rel_tol);
    QuadResult {
        value: r.value * width,
        abs_error: r.abs_error * width.abs(),
        levels: r.levels,
    }
}
