use crate::error::{Error, Result};
use crate::scalar::Real;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(xm1: T) -> T {
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (xm1 + T::from_usize_lossy(i));
    }
    acc
}

/// Gamma for any non-pole argument, using reflection below 1/2.
pub(crate) fn gamma_any<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma_any(T::one() - x));
    }
    let xm1 = x - T::one();
    let t = xm1 + T::lit(LANCZOS_G) + half;
    (T::TAU()).sqrt() * t.powf(xm1 + half) * (-t).exp() * lanczos_sum(xm1)
}

/// Gamma function for positive arguments.
pub fn gamma_fn<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::invalid("x", format!("gamma_fn requires x > 0, got {x}")));
    }
    Ok(gamma_any(x))
}

/// Natural log of Gamma for positive arguments.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::invalid("x", format!("ln_gamma requires x > 0, got {x}")));
    }
    let half = T::lit(0.5);
    if x < half {
        // ln Gamma(x) = ln Gamma(x + 1) - ln x
        return Ok(ln_gamma(x + T::one())? - x.ln());
    }
    let xm1 = x - T::one();
    let t = xm1 + T::lit(LANCZOS_G) + half;
    Ok(half * T::TAU().ln() + (xm1 + half) * t.ln() - t + lanczos_sum(xm1).ln())
}
