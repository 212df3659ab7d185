use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::{normal_cdf, normal_quantile, normal_sf};

pub const MIN_NORMALITY_LEN: usize = 8;
pub const SHAPIRO_WILK_MAX_LEN: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalityResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

impl NormalityResult {
    pub fn rejects(&self, level: f64) -> bool {
        self.p_value < level
    }
}

fn prepare<T: Real>(series: &[T]) -> Result<Vec<f64>> {
    if series.len() < MIN_NORMALITY_LEN {
        return Err(Error::invalid(
            "series",
            format!("needs at least {MIN_NORMALITY_LEN} values, got {}", series.len()),
        ));
    }
    let mut x: Vec<f64> = series.iter().map(|v| v.as_f64()).collect();
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("series", "contains non-finite values"));
    }
    x.sort_by(f64::total_cmp);
    if x[0] == x[x.len() - 1] {
        return Err(Error::Degenerate("constant series".into()));
    }
    Ok(x)
}

/// Anderson-Darling test against a normal with estimated mean and variance.
/// The statistic is the small-sample corrected `A^2 (1 + 0.75/n + 2.25/n^2)`.
pub fn anderson_darling_normality<T: Real>(series: &[T]) -> Result<NormalityResult> {
    let x = prepare(series)?;
    let n = x.len();
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let sd = (x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0)).sqrt();
    let z: Vec<f64> = x.iter().map(|v| (v - mean) / sd).collect();
    let mut s = 0.0;
    for i in 0..n {
        let lo = normal_cdf(z[i]).max(1e-300).ln();
        let hi = normal_sf(z[n - 1 - i]).max(1e-300).ln();
        s += (2 * i + 1) as f64 * (lo + hi);
    }
    let a2 = -nf - s / nf;
    let a = a2 * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    let p = if a >= 0.6 {
        // the fitted quadratic turns upward past its vertex; hold it there
        let a = a.min(5.709 / (2.0 * 0.0186));
        (1.2937 - 5.709 * a + 0.0186 * a * a).exp()
    } else if a >= 0.34 {
        (0.9177 - 4.279 * a - 1.38 * a * a).exp()
    } else if a >= 0.2 {
        1.0 - (-8.318 + 42.796 * a - 59.938 * a * a).exp()
    } else {
        1.0 - (-13.436 + 101.14 * a - 223.73 * a * a).exp()
    };
    Ok(NormalityResult {
        statistic: a,
        p_value: p.clamp(0.0, 1.0),
        n,
    })
}

fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

/// Shapiro-Wilk W with Royston's coefficient and p-value approximations.
pub fn shapiro_wilk_normality<T: Real>(series: &[T]) -> Result<NormalityResult> {
    if series.len() > SHAPIRO_WILK_MAX_LEN {
        return Err(Error::invalid(
            "series",
            format!(
                "Shapiro-Wilk supports at most {SHAPIRO_WILK_MAX_LEN} values, got {}",
                series.len()
            ),
        ));
    }
    let x = prepare(series)?;
    let n = x.len();
    let nf = n as f64;
    let half = n / 2;

    let m: Vec<f64> = (0..half)
        .map(|i| normal_quantile((i as f64 + 1.0 - 0.375) / (nf + 0.25)))
        .collect();
    let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
    let ssumm2 = summ2.sqrt();
    let u = 1.0 / nf.sqrt();
    let c1 = [0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056];
    let c2 = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];

    let mut a = vec![0.0; half];
    let a1 = poly(&c1, u) - m[0] / ssumm2;
    let a2 = poly(&c2, u) - m[1] / ssumm2;
    let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
        / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
        .sqrt();
    a[0] = a1;
    a[1] = a2;
    for i in 2..half {
        a[i] = -m[i] / fac;
    }

    let mean = x.iter().sum::<f64>() / nf;
    let ss: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
    let num: f64 = (0..half).map(|i| a[i] * (x[n - 1 - i] - x[i])).sum();
    let w = (num * num / ss).min(1.0);

    let one_minus = 1.0 - w;
    let p = if one_minus <= 0.0 {
        1.0
    } else if n <= 11 {
        let gamma = poly(&[-2.273, 0.459], nf);
        let y = one_minus.ln();
        if y >= gamma {
            0.0
        } else {
            let y2 = -(gamma - y).ln();
            let mu = poly(&[0.544, -0.39978, 0.025054, -6.714e-4], nf);
            let sigma = poly(&[1.3822, -0.77857, 0.062767, -0.0020322], nf).exp();
            normal_sf((y2 - mu) / sigma)
        }
    } else {
        let ln_n = nf.ln();
        let mu = poly(&[-1.5861, -0.31082, -0.083751, 0.0038915], ln_n);
        let sigma = poly(&[-0.4803, -0.082676, 0.0030302], ln_n).exp();
        normal_sf((one_minus.ln() - mu) / sigma)
    };
    Ok(NormalityResult {
        statistic: w,
        p_value: p.clamp(0.0, 1.0),
        n,
    })
}
