//! Closed-form analytics for the fractional Ornstein-Uhlenbeck process
//! `dw = -a w dt + sigma dB^H` started at `w0`.
//!
//! The state density at time `t` is Gaussian with mean `e^{-at} w0` and
//! variance `2 Z(t)`, where for `H in (1/2, 1)`
//!
//! ```text
//! Z(t) = a^{-2H}/2 sigma^2 H Gamma(2H)
//!      - H(2H-1) t^{2H-1} sigma^2/(2a) E_{2-2H}(at)
//!      - H t^{2H-1} sigma^2/(2a) e^{-2at} M(2H-1, 2H, at)
//! ```
//!
//! (`(2H-1) Gamma(2H-1)` is written as `Gamma(2H)`). `Z` equals half the
//! double integral of the noise kernel `sigma^2 H(2H-1)|t1-t2|^{2H-2}`
//! against `e^{-a t1} e^{-a t2}` over `[0,t]^2`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh;
use crate::scalar::Real;
use crate::special::{exp_integral_e, gamma_fn, kummer_m_scaled, normal_cdf};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FouParams<T> {
    /// Curvature of the quadratic potential (drift coefficient).
    pub a: T,
    pub sigma: T,
    pub hurst: T,
    pub w0: T,
}

impl<T: Real> FouParams<T> {
    /// Checks `a > 0`, `sigma >= 0` and `H in (0, 1)`; the simulation
    /// routines accept this whole range.
    pub fn new(a: T, sigma: T, hurst: T, w0: T) -> Result<Self> {
        let p = Self {
            a,
            sigma,
            hurst,
            w0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > T::zero()) || !self.a.is_finite() {
            return Err(Error::invalid("a", format!("must be positive, got {}", self.a)));
        }
        if !(self.sigma >= T::zero()) || !self.sigma.is_finite() {
            return Err(Error::invalid(
                "sigma",
                format!("must be non-negative, got {}", self.sigma),
            ));
        }
        if !(self.hurst > T::zero() && self.hurst < T::one()) {
            return Err(Error::invalid(
                "hurst",
                format!("must lie in (0, 1), got {}", self.hurst),
            ));
        }
        if !self.w0.is_finite() {
            return Err(Error::invalid("w0", "must be finite"));
        }
        Ok(())
    }

    /// The closed forms need `H in (1/2, 1)` and `sigma > 0`.
    pub fn validate_analytic(&self) -> Result<()> {
        self.validate()?;
        let half = T::lit(0.5);
        if !(self.hurst > half) {
            return Err(Error::invalid(
                "hurst",
                format!(
                    "analytic fOU formulas need H in (0.5, 1), got {}; use the classical OU form at H = 0.5 or simulate",
                    self.hurst
                ),
            ));
        }
        if !(self.sigma > T::zero()) {
            return Err(Error::invalid("sigma", "analytic formulas need sigma > 0"));
        }
        Ok(())
    }

    /// The first-passage shape is defined for every `H in (0, 1)` but needs
    /// `sigma > 0`.
    fn validate_fpt(&self) -> Result<()> {
        self.validate()?;
        if !(self.sigma > T::zero()) {
            return Err(Error::invalid("sigma", "first-passage shape needs sigma > 0"));
        }
        Ok(())
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::invalid("t", format!("must be positive, got {t}")));
    }
    Ok(())
}

/// Half the variance of `w_t`; see the module docs.
pub fn z_of_t<T: Real>(params: &FouParams<T>, t: T) -> Result<T> {
    params.validate_analytic()?;
    check_time(t)?;
    let FouParams { a, sigma, hurst: h, .. } = *params;
    let one = T::one();
    let two = T::lit(2.0);
    let two_h = two * h;
    let s2 = sigma * sigma;
    let at = a * t;

    let stationary = a.powf(-two_h) / two * s2 * h * gamma_fn(two_h)?;
    let e = exp_integral_e(two - two_h, at)?;
    let pref = t.powf(two_h - one) * s2 / (two * a);
    let expint_term = h * (two_h - one) * pref * e.value;
    // e^{-2at} M(2H-1, 2H, at) = e^{-at} * [e^{-at} M]
    let m = kummer_m_scaled(two_h - one, two_h, at)?;
    let kummer_term = h * pref * (-at).exp() * m.value;
    let z = stationary - expint_term - kummer_term;
    if !z.is_finite() {
        return Err(Error::Numerical(format!("Z({t}) evaluated to {z}")));
    }
    Ok(z)
}

/// Large-t limit `a^{-2H} sigma^2 H (2H-1) Gamma(2H-1) / 2`.
pub fn z_stationary<T: Real>(params: &FouParams<T>) -> Result<T> {
    params.validate_analytic()?;
    let two_h = T::lit(2.0) * params.hurst;
    Ok(params.a.powf(-two_h) / T::lit(2.0)
        * params.sigma
        * params.sigma
        * params.hurst
        * gamma_fn(two_h)?)
}

/// Classical OU counterpart at H = 1/2: `sigma^2 (1 - e^{-2at}) / (4a)`.
pub fn z_classical_ou<T: Real>(a: T, sigma: T, t: T) -> T {
    sigma * sigma * (T::one() - (T::lit(-2.0) * a * t).exp()) / (T::lit(4.0) * a)
}

/// Mean and variance of the state at time `t`.
pub fn state_moments<T: Real>(params: &FouParams<T>, t: T) -> Result<(T, T)> {
    let z = z_of_t(params, t)?;
    Ok(((-params.a * t).exp() * params.w0, T::lit(2.0) * z))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve<T> {
    pub t: T,
    pub grid: Vec<T>,
    pub density: Vec<T>,
}

impl<T: Real> DensityCurve<T> {
    /// Trapezoid integral over the grid.
    pub fn integral(&self) -> T {
        self.grid
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(g, d)| (g[1] - g[0]) * (d[0] + d[1]) / T::lit(2.0))
            .sum()
    }

    /// CSV with header `w,density`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "w,density")?;
        for (x, p) in self.grid.iter().zip(&self.density) {
            writeln!(w, "{},{}", x.as_f64(), p.as_f64())?;
        }
        Ok(())
    }
}

/// `p(w,t) = exp(-(w - e^{-at} w0)^2 / (4 Z)) / (2 sqrt(pi Z))` on `grid`.
pub fn state_density<T: Real>(params: &FouParams<T>, t: T, grid: &[T]) -> Result<DensityCurve<T>> {
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("grid", "must be strictly increasing"));
    }
    let z = z_of_t(params, t)?;
    let mean = (-params.a * t).exp() * params.w0;
    let norm = T::lit(2.0) * (T::PI() * z).sqrt();
    let four_z = T::lit(4.0) * z;
    let density = grid
        .iter()
        .map(|&w| (-(w - mean).powi(2) / four_z).exp() / norm)
        .collect();
    Ok(DensityCurve {
        t,
        grid: grid.to_vec(),
        density,
    })
}

/// Evenly spaced grid covering `mean +- half_width_sd` standard deviations.
pub fn density_grid<T: Real>(params: &FouParams<T>, t: T, half_width_sd: T, points: usize) -> Result<Vec<T>> {
    if points < 2 {
        return Err(Error::invalid("points", "need at least two grid points"));
    }
    let (mean, var) = state_moments(params, t)?;
    let half = half_width_sd * var.sqrt();
    let step = (half + half) / T::from_usize_lossy(points - 1);
    Ok((0..points)
        .map(|i| mean - half + step * T::from_usize_lossy(i))
        .collect())
}

/// CDF of the Gaussian state density at time `t`.
pub fn state_cdf<T: Real>(params: &FouParams<T>, t: T) -> Result<impl Fn(T) -> T> {
    let (mean, var) = state_moments(params, t)?;
    let sd = var.sqrt();
    Ok(move |w: T| normal_cdf((w - mean) / sd))
}

/// Mass of the free (unabsorbed) state density inside `(-b, b)`.
///
/// This is the survival function obtained by integrating the unabsorbed
/// density over the domain, so it need not be monotone in `t`.
pub fn survival_probability<T: Real>(params: &FouParams<T>, t: T, b: T) -> Result<T> {
    if !(b >= T::zero()) {
        return Err(Error::invalid("b", "boundary half-width must be non-negative"));
    }
    let (mean, var) = state_moments(params, t)?;
    if b == T::zero() {
        return Ok(T::zero());
    }
    if b.is_infinite() {
        return Ok(T::one());
    }
    let sd = var.sqrt();
    let norm = (T::TAU() * var).sqrt();
    // past ~40 sd the density is zero in double precision
    let reach = T::lit(40.0) * sd;
    let lo = (-b).max(mean - reach);
    let hi = b.min(mean + reach);
    if !(hi > lo) {
        return Ok(T::zero());
    }
    let r = tanh_sinh(
        |w: T| (-(w - mean).powi(2) / (T::lit(2.0) * var)).exp() / norm,
        lo,
        hi,
        T::lit(T::QUAD_TOL),
    );
    Ok(r.value.min(T::one()))
}

/// Large-t first-passage density shape `a^{3H} t^{2H-2} e^{-at} / sigma`
/// with the unknown constant factors dropped.
pub fn fpt_density_approx<T: Real>(params: &FouParams<T>, t: T) -> Result<T> {
    params.validate_fpt()?;
    check_time(t)?;
    Ok(fpt_shape_unchecked(params, t))
}

fn fpt_shape_unchecked<T: Real>(params: &FouParams<T>, t: T) -> T {
    let h = params.hurst;
    params.a.powf(T::lit(3.0) * h) * t.powf(T::lit(2.0) * h - T::lit(2.0)) * (-params.a * t).exp()
        / params.sigma
}

/// The first-passage shape normalized to unit mass on `(t_min, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedFpt<T> {
    pub params: FouParams<T>,
    pub t_min: T,
    /// Integral of the unnormalized shape over `(t_min, inf)`.
    pub mass: T,
}

impl<T: Real> NormalizedFpt<T> {
    /// Normalizes with `t_min = 1e-3 / a`.
    pub fn new(params: FouParams<T>) -> Result<Self> {
        let t_min = T::lit(1e-3) / params.a;
        Self::with_t_min(params, t_min)
    }

    /// Quadrature on `(t_min, 50/a)` plus the exact tail
    /// `int_T^inf t^{2H-2} e^{-at} dt = T^{2H-1} E_{2-2H}(aT)`.
    pub fn with_t_min(params: FouParams<T>, t_min: T) -> Result<Self> {
        params.validate_fpt()?;
        check_time(t_min)?;
        let t_cut = T::lit(50.0) / params.a;
        let mass = if t_min >= t_cut {
            tail_mass(&params, t_min)?
        } else {
            let body = tanh_sinh(
                |t: T| fpt_shape_unchecked(&params, t),
                t_min,
                t_cut,
                T::lit(T::QUAD_TOL),
            );
            body.value + tail_mass(&params, t_cut)?
        };
        Ok(Self {
            params,
            t_min,
            mass,
        })
    }

    pub fn density(&self, t: T) -> Result<T> {
        if t < self.t_min {
            return Ok(T::zero());
        }
        Ok(fpt_density_approx(&self.params, t)? / self.mass)
    }

    /// Mean of the normalized density,
    /// `t_min^{2H} E_{1-2H}(a t_min) / (t_min^{2H-1} E_{2-2H}(a t_min))`.
    pub fn mean(&self) -> Result<T> {
        Ok(first_moment_from(&self.params, self.t_min)? / self.mass)
    }

    /// CSV with header `t,density` on the given times.
    pub fn write_csv<W: Write>(&self, times: &[T], mut w: W) -> Result<()> {
        writeln!(w, "t,density")?;
        for &t in times {
            writeln!(w, "{},{}", t.as_f64(), self.density(t)?.as_f64())?;
        }
        Ok(())
    }
}

fn tail_mass<T: Real>(params: &FouParams<T>, from: T) -> Result<T> {
    let h = params.hurst;
    let two_h = T::lit(2.0) * h;
    let e = exp_integral_e(T::lit(2.0) - two_h, params.a * from)?;
    Ok(params.a.powf(T::lit(3.0) * h) / params.sigma * from.powf(two_h - T::one()) * e.value)
}

/// `int_{t_min}^inf t * shape(t) dt`, the first moment of the unnormalized
/// shape. Unlike the normalized mean it keeps the `a^{3H}/sigma` prefactor.
pub fn fpt_first_moment<T: Real>(params: &FouParams<T>, t_min: T) -> Result<T> {
    params.validate_fpt()?;
    check_time(t_min)?;
    first_moment_from(params, t_min)
}

fn first_moment_from<T: Real>(params: &FouParams<T>, from: T) -> Result<T> {
    let h = params.hurst;
    let two_h = T::lit(2.0) * h;
    let e = exp_integral_e(T::one() - two_h, params.a * from)?;
    Ok(params.a.powf(T::lit(3.0) * h) / params.sigma * from.powf(two_h) * e.value)
}
