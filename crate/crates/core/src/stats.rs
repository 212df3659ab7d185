//! Small descriptive-statistics and testing helpers shared across modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::scalar::Real;

pub fn mean<T: Real>(xs: &[T]) -> T {
    if xs.is_empty() {
        return T::nan();
    }
    xs.iter().copied().sum::<T>() / T::from_usize_lossy(xs.len())
}

/// Variance with divisor `n - ddof`.
pub fn variance<T: Real>(xs: &[T], ddof: usize) -> T {
    if xs.len() <= ddof {
        return T::nan();
    }
    let m = mean(xs);
    xs.iter().map(|&x| (x - m) * (x - m)).sum::<T>() / T::from_usize_lossy(xs.len() - ddof)
}

pub fn std_dev<T: Real>(xs: &[T], ddof: usize) -> T {
    variance(xs, ddof).sqrt()
}

/// Sample skewness `m3 / m2^{3/2}` with population moments.
pub fn skewness<T: Real>(xs: &[T]) -> T {
    let m = mean(xs);
    let n = T::from_usize_lossy(xs.len());
    let m2 = xs.iter().map(|&x| (x - m).powi(2)).sum::<T>() / n;
    let m3 = xs.iter().map(|&x| (x - m).powi(3)).sum::<T>() / n;
    m3 / m2.powf(T::lit(1.5))
}

/// Biased sample autocovariance (divisor `n`) at the given lag.
pub fn autocovariance<T: Real>(xs: &[T], lag: usize) -> T {
    let n = xs.len();
    if lag >= n {
        return T::zero();
    }
    let m = mean(xs);
    let s: T = (0..n - lag).map(|i| (xs[i] - m) * (xs[i + lag] - m)).sum();
    s / T::from_usize_lossy(n)
}

pub fn autocorrelation<T: Real>(xs: &[T], lag: usize) -> T {
    autocovariance(xs, lag) / autocovariance(xs, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
}

/// Ordinary least squares `y = intercept + slope * x`.
pub fn linear_fit<T: Real>(x: &[T], y: &[T]) -> Result<LinearFit<T>> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::invalid("x, y", "need at least two paired points"));
    }
    let mx = mean(x);
    let my = mean(y);
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    let mut syy = T::zero();
    for (&xi, &yi) in x.iter().zip(y) {
        sxx = sxx + (xi - mx) * (xi - mx);
        sxy = sxy + (xi - mx) * (yi - my);
        syy = syy + (yi - my) * (yi - my);
    }
    if sxx == T::zero() {
        return Err(Error::Degenerate("all abscissae identical".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == T::zero() {
        T::one()
    } else {
        (sxy * sxy / (sxx * syy)).min(T::one())
    };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// One-sample Kolmogorov-Smirnov distance `sup |F_n - F|`.
pub fn ks_distance<T: Real, F: Fn(T) -> T>(sample: &[T], cdf: F) -> T {
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite sample"));
    let n = T::from_usize_lossy(xs.len());
    let mut d = T::zero();
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let lo = T::from_usize_lossy(i) / n;
        let hi = T::from_usize_lossy(i + 1) / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    d
}

/// Asymptotic Kolmogorov tail probability `Q_KS(lambda)`.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = sign * (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(f64::total_cmp);
    xb.sort_by(f64::total_cmp);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let v = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= v {
            i += 1;
        }
        while j < xb.len() && xb[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = (na * nb / (na + nb)).sqrt();
    let p = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
    (d, p)
}

/// Average ranks (ties share the mean rank), 1-based.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let mx = mean(x);
    let my = mean(y);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    sxy / (sxx * syy).sqrt()
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&ranks(x), &ranks(y))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PermutationTest {
    pub rho: f64,
    /// One-sided p-value in the direction of the observed sign.
    pub p_value: f64,
    pub permutations: usize,
}

/// Spearman correlation with a permutation p-value.
///
/// `strata` restricts shuffling of `x` to observations that share a stratum
/// label, so the null keeps the other design factors fixed. Pass all-equal
/// labels for an unrestricted permutation test.
pub fn spearman_permutation(
    x: &[f64],
    y: &[f64],
    strata: &[usize],
    permutations: usize,
    seed: u64,
) -> PermutationTest {
    use rand::seq::SliceRandom;
    let rho = spearman(x, y);
    let mut rng = rng_from_seed(seed);
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &s) in strata.iter().enumerate() {
        groups.entry(s).or_default().push(i);
    }
    let ry = ranks(y);
    let mut xp = x.to_vec();
    let mut extreme = 0usize;
    for _ in 0..permutations {
        for members in groups.values() {
            let mut vals: Vec<f64> = members.iter().map(|&i| x[i]).collect();
            vals.shuffle(&mut rng);
            for (&i, v) in members.iter().zip(vals) {
                xp[i] = v;
            }
        }
        let r = pearson(&ranks(&xp), &ry);
        if (rho >= 0.0 && r >= rho) || (rho < 0.0 && r <= rho) {
            extreme += 1;
        }
    }
    PermutationTest {
        rho,
        p_value: (extreme + 1) as f64 / (permutations + 1) as f64,
        permutations,
    }
}
