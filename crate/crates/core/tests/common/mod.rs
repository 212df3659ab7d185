//! Statistical and structural property checks shared by the `properties`
//! and `acceptance` targets. Each returns an [`Outcome`] instead of
//! panicking so the acceptance report can list every result.

#![allow(dead_code)]

pub mod reference;

use fracsgn::fou::{state_density, density_grid, z_of_t, FouParams, NormalizedFpt};
use fracsgn::hurst::{calibrate_estimator, estimate_hurst, WindowPolicy};
use fracsgn::noise::{fgn_autocovariance, generate_fgn, generate_fgn_batch, generate_stable, FgnGenerator};
use fracsgn::rng::{derive_seed, rng_from_seed};
use fracsgn::sgn::{
    empirical_zeta_moments, sampling_noise_moments, scalarize_trace, train_toy_and_log,
    DatasetSpec, ModelSpec, SamplingScheme, Scalarization, TrainConfig,
};
use fracsgn::sim::{
    convergence_slope, drift_distance_experiment, first_passage_mc, simulate_fou_paths,
    DriftConfig, SimConfig,
};
use fracsgn::quadrature::tanh_sinh;
use fracsgn::special::{exp_integral_e, kummer_m};
use fracsgn::stats::{ks_two_sample, linear_fit};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(name: &'static str, pass: bool, detail: String) -> Self {
        Self { name, pass, detail }
    }

    pub fn assert(&self) {
        assert!(self.pass, "{}: {}", self.name, self.detail);
    }
}

/// Cross-covariance sign of FBM increments over disjoint windows.
pub fn increment_correlation_signs() -> Outcome {
    let reps = 20_000;
    let mut lines = Vec::new();
    let mut pass = true;
    for (i, &h) in [0.3, 0.5, 0.7].iter().enumerate() {
        let batch = generate_fgn_batch(h, 64, 1.0, derive_seed(11, i as u64), reps).unwrap();
        for (gap, (x0, x1, y0, y1)) in [(0usize, (0, 16, 16, 32)), (16, (0, 16, 32, 48))] {
            let prods: Vec<f64> = batch
                .iter()
                .map(|s| {
                    let x: f64 = s.values[x0..x1].iter().sum();
                    let y: f64 = s.values[y0..y1].iter().sum();
                    x * y
                })
                .collect();
            let m = prods.iter().sum::<f64>() / reps as f64;
            let sd = (prods.iter().map(|p| (p - m) * (p - m)).sum::<f64>() / (reps - 1) as f64).sqrt();
            let z = m / (sd / (reps as f64).sqrt());
            let ok = if h < 0.5 {
                z < -3.0
            } else if h > 0.5 {
                z > 3.0
            } else {
                z.abs() < 4.0
            };
            pass &= ok;
            lines.push(format!("H={h} gap={gap}: z={z:.1}"));
        }
    }
    Outcome::new("increment correlation signs", pass, lines.join(", "))
}

/// `B(c t) / c^H` against `B(t)` by a two-sample KS test at the 1% level.
pub fn self_similarity() -> Outcome {
    let reps = 2000;
    let mut lines = Vec::new();
    let mut pass = true;
    for (i, &h) in [0.3, 0.7].iter().enumerate() {
        let a = generate_fgn_batch(h, 64, 1.0, derive_seed(21, 2 * i as u64), reps).unwrap();
        let b = generate_fgn_batch(h, 64, 1.0, derive_seed(21, 2 * i as u64 + 1), reps).unwrap();
        let small: Vec<f64> = a.iter().map(|s| s.values[..8].iter().sum()).collect();
        let c: f64 = 4.0;
        let large: Vec<f64> = b
            .iter()
            .map(|s| s.values[..32].iter().sum::<f64>() / c.powf(h))
            .collect();
        let (d, p) = ks_two_sample(&small, &large);
        pass &= p > 0.01;
        lines.push(format!("H={h}: D={d:.4} p={p:.3}"));
    }
    Outcome::new("self-similarity", pass, lines.join(", "))
}

/// Mean-zero sample autocovariance at lags 0..20 against the exact values.
pub fn autocovariance_lags() -> Outcome {
    let reps = 200;
    let n = 4096;
    let mut worst = 0.0f64;
    for (i, &h) in [0.3, 0.5, 0.8].iter().enumerate() {
        let batch = generate_fgn_batch(h, n, 1.0, derive_seed(31, i as u64), reps).unwrap();
        for lag in 0..=20 {
            let est: Vec<f64> = batch
                .iter()
                .map(|s| {
                    let v = &s.values;
                    (0..n - lag).map(|k| v[k] * v[k + lag]).sum::<f64>() / (n - lag) as f64
                })
                .collect();
            let m = est.iter().sum::<f64>() / reps as f64;
            let sd = (est.iter().map(|e| (e - m) * (e - m)).sum::<f64>() / (reps - 1) as f64).sqrt();
            let se = sd / (reps as f64).sqrt();
            let z = (m - fgn_autocovariance(h, lag).unwrap()).abs() / se;
            worst = worst.max(z);
        }
    }
    Outcome::new(
        "autocovariance lags 0..20",
        worst < 4.0,
        format!("max |z| = {worst:.2} over H in {{0.3, 0.5, 0.8}}"),
    )
}

pub fn noise_determinism() -> Outcome {
    let a = generate_fgn(0.7, 5000, 0.01, 42).unwrap();
    let b = generate_fgn(0.7, 5000, 0.01, 42).unwrap();
    let c = generate_fgn(0.7, 5000, 0.01, 43).unwrap();
    let s1 = generate_stable(1.3, 5000, 9).unwrap();
    let s2 = generate_stable(1.3, 5000, 9).unwrap();
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    let pass = bits(&a.values) == bits(&b.values)
        && bits(&a.values) != bits(&c.values)
        && bits(&s1.values) == bits(&s2.values);
    Outcome::new("noise determinism", pass, "bit-identical under equal seeds".into())
}

/// `d/dt M(a,b,t) = (a/b) M(a+1,b+1,t)` by central differences.
pub fn kummer_derivative_recurrence() -> Outcome {
    let mut rng = rng_from_seed(51);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a: f64 = rng.random_range(0.05..1.5);
        let b: f64 = a + rng.random_range(0.1..2.0);
        let t: f64 = rng.random_range(-15.0..15.0);
        let h = 1e-4 * t.abs().max(1.0);
        let fd = (kummer_m(a, b, t + h).unwrap().value - kummer_m(a, b, t - h).unwrap().value) / (2.0 * h);
        let rec = a / b * kummer_m(a + 1.0, b + 1.0, t).unwrap().value;
        worst = worst.max((fd - rec).abs() / rec.abs());
    }
    Outcome::new(
        "Kummer derivative recurrence",
        worst < 1e-6,
        format!("max relative error {worst:.2e} at 20 random points"),
    )
}

/// Strict decrease of `E_p(t)` in `t` and in `p` on a grid.
pub fn expint_monotone() -> Outcome {
    let ps: Vec<f64> = (0..=16).map(|i| -2.0 + 0.25 * i as f64).collect();
    let ts: Vec<f64> = (0..30).map(|i| 0.05 * 1.2f64.powi(i)).collect();
    let mut bad = 0;
    for &p in &ps {
        let vals: Vec<f64> = ts.iter().map(|&t| exp_integral_e(p, t).unwrap().value).collect();
        bad += vals.windows(2).filter(|w| !(w[1] < w[0])).count();
    }
    for &t in &ts {
        let vals: Vec<f64> = ps.iter().map(|&p| exp_integral_e(p, t).unwrap().value).collect();
        bad += vals.windows(2).filter(|w| !(w[1] < w[0])).count();
    }
    Outcome::new(
        "E_p monotone in t and p",
        bad == 0,
        format!("{bad} non-decreasing steps on a {}x{} grid", ps.len(), ts.len()),
    )
}

/// Agreement with the arbitrary-precision table.
pub fn special_functions_vs_reference() -> Outcome {
    let mut worst_e = 0.0f64;
    for &(p, t, want) in reference::EXPINT.iter() {
        let got = exp_integral_e(p, t).unwrap().value;
        worst_e = worst_e.max((got - want).abs() / want.abs());
    }
    let mut worst_m = 0.0f64;
    for &(a, b, t, want) in reference::KUMMER.iter() {
        let got = kummer_m(a, b, t).unwrap().value;
        worst_m = worst_m.max((got - want).abs() / want.abs());
    }
    Outcome::new(
        "special functions vs reference table",
        worst_e < 1e-9 && worst_m < 1e-9,
        format!("E_p max rel {worst_e:.1e}, M max rel {worst_m:.1e} (100 points each)"),
    )
}

/// Half of `int_0^t int_0^t e^{-a t1} e^{-a t2} g(t1 - t2)`, integrated over
/// the ordered region. The lag `tau = t1 - t2` is written as `s^{1/(2H-1)}`,
/// which turns `tau^{2H-2} d tau` into a constant multiple of `ds`.
pub fn z_brute_force(h: f64, a: f64, sigma: f64, t: f64) -> f64 {
    let q = 1.0 / (2.0 * h - 1.0);
    let c = sigma * sigma * h * (2.0 * h - 1.0) * q;
    tanh_sinh(
        |t1: f64| {
            tanh_sinh(
                |s: f64| c * (-a * (2.0 * t1 - s.powf(q))).exp(),
                0.0,
                t1.powf(2.0 * h - 1.0),
                1e-13,
            )
            .value
        },
        0.0,
        t,
        1e-12,
    )
    .value
}

fn normal_series(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    (0..len).map(|_| StandardNormal.sample(&mut rng)).collect()
}

/// `estimate_hurst(c x + b)` and `estimate_hurst(-x)` against `estimate_hurst(x)`.
pub fn rs_affine_invariance() -> Outcome {
    let policy = WindowPolicy::default();
    let mut worst = 0.0f64;
    let mut rng = rng_from_seed(61);
    for i in 0..25 {
        let x = if i % 2 == 0 {
            normal_series(2048, derive_seed(62, i))
        } else {
            generate_fgn(0.75, 2048, 1.0, derive_seed(63, i)).unwrap().values
        };
        let base = estimate_hurst(&x, &policy).unwrap().hurst;
        let c: f64 = 10f64.powf(rng.random_range(-3.0..3.0));
        let b: f64 = rng.random_range(-100.0..100.0);
        let scaled: Vec<f64> = x.iter().map(|v| c * v + b).collect();
        let flipped: Vec<f64> = x.iter().map(|v| -v).collect();
        worst = worst
            .max((estimate_hurst(&scaled, &policy).unwrap().hurst - base).abs())
            .max((estimate_hurst(&flipped, &policy).unwrap().hurst - base).abs());
    }
    Outcome::new(
        "R/S affine and sign-flip invariance",
        worst < 1e-10,
        format!("max |dH| = {worst:.1e} over 25 series"),
    )
}

pub fn hurst_discrimination() -> Outcome {
    let rows = calibrate_estimator(&[0.3, 0.5, 0.7], 10_000, 200, 71, &WindowPolicy::default()).unwrap();
    let m: Vec<f64> = rows.iter().map(|r| r.mean_estimate).collect();
    let pass = m[1] - m[0] > 0.1 && m[2] - m[1] > 0.1;
    Outcome::new(
        "Hurst discrimination",
        pass,
        format!("means {:.3} / {:.3} / {:.3} (200 seeds)", m[0], m[1], m[2]),
    )
}

/// Log-log linearity over the full doubling range `8..N/4`; the share of
/// series clearing the same bar under the default policy is reported too.
pub fn hurst_log_linearity() -> Outcome {
    let canonical = WindowPolicy::Doubling { min: 8, max: 2500 };
    let default = WindowPolicy::default();
    let mut worst = 1.0f64;
    let mut default_ok = 0usize;
    let mut total = 0usize;
    for (i, &h) in [0.3, 0.5, 0.7].iter().enumerate() {
        let batch = generate_fgn_batch(h, 10_000, 1.0, derive_seed(81, i as u64), 50).unwrap();
        for s in &batch {
            worst = worst.min(estimate_hurst(&s.values, &canonical).unwrap().r_squared);
            default_ok += usize::from(estimate_hurst(&s.values, &default).unwrap().r_squared > 0.95);
            total += 1;
        }
    }
    let share = default_ok as f64 / total as f64;
    Outcome::new(
        "R/S log-log linearity",
        worst > 0.95 && share >= 0.95,
        format!("min r^2 = {worst:.4} on windows 8..N/4; default windows r^2 > 0.95 in {:.1}% of {total} series", 100.0 * share),
    )
}

/// Density variance is `2 Z`; simulated endpoints match it.
pub fn density_and_ensemble_variance() -> Outcome {
    let params = FouParams::new(1.0, 1.0, 0.7, 0.0).unwrap();
    let t_end = 10.0;
    let z = z_of_t(&params, t_end).unwrap();
    let grid = density_grid(&params, t_end, 10.0, 4001).unwrap();
    let curve = state_density(&params, t_end, &grid).unwrap();
    let dw = grid[1] - grid[0];
    let var_density: f64 = grid.iter().zip(&curve.density).map(|(w, p)| w * w * p).sum::<f64>() * dw;
    let density_ok = (var_density / (2.0 * z) - 1.0).abs() < 1e-6;

    let mut lines = vec![format!("density variance / 2Z - 1 = {:.1e}", var_density / (2.0 * z) - 1.0)];
    let mut pass = density_ok;
    for (h, target) in [(0.5, 0.5), (0.7, 2.0 * z)] {
        let p = FouParams::new(1.0, 1.0, h, 0.0).unwrap();
        let cfg = SimConfig::new(p, t_end, 1e-3, 10_000, 91).unwrap();
        let ens = simulate_fou_paths(&cfg, false).unwrap();
        let n = ens.endpoints.len() as f64;
        let var = ens.endpoints.iter().map(|x| x * x).sum::<f64>() / n;
        let m4 = ens.endpoints.iter().map(|x| x.powi(4)).sum::<f64>() / n;
        let se = ((m4 - var * var) / n).sqrt();
        let z_score = (var - target) / se;
        pass &= z_score.abs() < 4.0;
        lines.push(format!("H={h}: var={var:.4} target={target:.4} z={z_score:.2}"));
    }
    Outcome::new("state variance = 2Z", pass, lines.join(", "))
}

/// Mean of the normalized escape-time density across the escaping-time grid:
/// increasing in H, increasing in a, decreasing in sigma.
pub fn normalized_escape_mean_monotone() -> Outcome {
    let levels = fracsgn::sim::ESCAPE_GRID_LEVELS;
    let hs = fracsgn::sim::ESCAPE_GRID_HURST;
    let mean = |h: f64, a: f64, inv: f64| {
        NormalizedFpt::new(FouParams::new(a, 1.0 / f64::sqrt(inv), h, 0.0).unwrap())
            .unwrap()
            .mean()
            .unwrap()
    };
    let (mut bad_h, mut bad_a, mut bad_s) = (0, 0, 0);
    let (mut n_h, mut n_a, mut n_s) = (0, 0, 0);
    for &a in &levels {
        for &inv in &levels {
            for w in hs.windows(2) {
                n_h += 1;
                bad_h += usize::from(!(mean(w[1], a, inv) > mean(w[0], a, inv)));
            }
        }
    }
    for &h in &hs {
        for &inv in &levels {
            for w in levels.windows(2) {
                n_a += 1;
                bad_a += usize::from(!(mean(h, w[1], inv) > mean(h, w[0], inv)));
            }
        }
        for &a in &levels {
            // sigma increases as 1/sigma^2 decreases
            for w in levels.windows(2) {
                n_s += 1;
                bad_s += usize::from(!(mean(h, a, w[0]) < mean(h, a, w[1])));
            }
        }
    }
    Outcome::new(
        "normalized escape mean monotone in H, a, sigma",
        bad_h + bad_a + bad_s == 0,
        format!(
            "violations: H {bad_h}/{n_h}, a {bad_a}/{n_a}, sigma {bad_s}/{n_s} (mean is sigma-free and scales as 1/a)"
        ),
    )
}

/// Summing fine FGN increments over coarse cells reproduces the fBm at the
/// coarse grid points, and coarse Euler on those sums is what the strong
/// error compares against.
pub fn noise_aggregation_consistency() -> Outcome {
    let h = 0.75;
    let fine = generate_fgn(h, 4096, 1.0 / 4096.0, 101).unwrap();
    let fbm = fine.to_fbm();
    let mut worst = 0.0f64;
    for ratio in [2usize, 8, 64] {
        let coarse: Vec<f64> = fine.values.chunks_exact(ratio).map(|c| c.iter().sum()).collect();
        let mut acc = 0.0;
        for (k, v) in coarse.iter().enumerate() {
            acc += v;
            worst = worst.max((acc - fbm[(k + 1) * ratio - 1]).abs());
        }
    }
    let params = FouParams::new(1.0, 1.0, h, 0.0).unwrap();
    let dts: Vec<f64> = [6, 7, 8, 12].iter().map(|&e| 2f64.powi(-e)).collect();
    let a = convergence_slope(&params, &dts, 1.0, 4, 3).unwrap();
    let b = convergence_slope(&params, &dts, 1.0, 4, 3).unwrap();
    Outcome::new(
        "noise aggregation consistency",
        worst < 1e-12 && a == b,
        format!("max |coarse sum - fBm| = {worst:.1e}"),
    )
}

pub fn simulation_determinism() -> Outcome {
    let p = FouParams::new(1.5, 0.8, 0.3, 0.0).unwrap();
    let cfg = SimConfig::new(p, 30.0, 0.01, 16, 5).unwrap();
    let fpt_same = first_passage_mc(&cfg, 1.0).unwrap() == first_passage_mc(&cfg, 1.0).unwrap();
    let ens_same = simulate_fou_paths(&cfg, true).unwrap() == simulate_fou_paths(&cfg, true).unwrap();
    let d = DriftConfig::new(vec![0.3, 0.7], 64, 0.01, 1.0, 0.01, 8);
    let drift_same = drift_distance_experiment(&d).unwrap() == drift_distance_experiment(&d).unwrap();
    Outcome::new(
        "simulation determinism",
        fpt_same && ens_same && drift_same,
        format!("fpt {fpt_same}, ensemble {ens_same}, drift {drift_same}"),
    )
}

/// Frobenius error of the sampled zeta covariance falls like draws^{-1/2}.
pub fn zeta_mc_rate() -> Outcome {
    let scheme = SamplingScheme::new(20, 5, false).unwrap();
    let exact = sampling_noise_moments::<f64>(&scheme).unwrap();
    let draws = [1_000usize, 4_000, 16_000, 64_000];
    let reps = 8;
    let errs: Vec<f64> = draws
        .iter()
        .map(|&n| {
            (0..reps)
                .map(|r| {
                    let e = empirical_zeta_moments(&scheme, n, derive_seed2_local(n as u64, r)).unwrap();
                    e.covariance
                        .iter()
                        .zip(&exact.covariance)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt()
                })
                .sum::<f64>()
                / reps as f64
        })
        .collect();
    let lx: Vec<f64> = draws.iter().map(|&d| (d as f64).ln()).collect();
    let ly: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let slope = linear_fit(&lx, &ly).unwrap().slope;
    let halving: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
    Outcome::new(
        "zeta covariance Monte Carlo rate",
        (slope + 0.5).abs() < 0.15,
        format!("log-log slope {slope:.3}, error ratios per 4x draws {halving:.2?}"),
    )
}

fn derive_seed2_local(a: u64, b: u64) -> u64 {
    fracsgn::rng::derive_seed2(131, a, b)
}

/// Hurst estimate of a coordinate series is unchanged by rescaling the
/// logged noise (as a learning-rate change would).
pub fn trace_rescaling_invariance() -> Outcome {
    let ds = DatasetSpec {
        n_samples: 256,
        dim: 8,
        noise_sd: 0.5,
        seed: 3,
    };
    let trace = train_toy_and_log::<f64>(&ModelSpec::Linear, &ds, &TrainConfig::new(16, 0.02, 2048, 4)).unwrap();
    let mut scaled = trace.clone();
    scaled.noise_vectors.iter_mut().for_each(|v| *v *= 37.5);
    let policy = WindowPolicy::default();
    let mut worst = 0.0f64;
    for j in 0..trace.dim {
        let x = scalarize_trace(&trace, &Scalarization::Coordinate(j)).unwrap();
        let y = scalarize_trace(&scaled, &Scalarization::Coordinate(j)).unwrap();
        let d = estimate_hurst(&x, &policy).unwrap().hurst - estimate_hurst(&y, &policy).unwrap().hurst;
        worst = worst.max(d.abs());
    }
    Outcome::new(
        "coordinate Hurst invariant to noise rescaling",
        worst < 1e-10,
        format!("max |dH| = {worst:.1e} over {} coordinates", trace.dim),
    )
}

/// Quick FGN sanity that the generator object reproduces `generate_fgn`.
pub fn generator_consistency() -> Outcome {
    let g = FgnGenerator::new(0.6, 1000, 1.0).unwrap();
    let a = g.sample_values(5);
    let b = generate_fgn(0.6, 1000, 1.0, 5).unwrap().values;
    Outcome::new("generator reuse matches one-shot", a == b, String::new())
}

pub fn all_property_checks() -> Vec<fn() -> Outcome> {
    vec![
        increment_correlation_signs,
        self_similarity,
        autocovariance_lags,
        noise_determinism,
        generator_consistency,
        kummer_derivative_recurrence,
        expint_monotone,
        special_functions_vs_reference,
        rs_affine_invariance,
        hurst_discrimination,
        hurst_log_linearity,
        density_and_ensemble_variance,
        normalized_escape_mean_monotone,
        noise_aggregation_consistency,
        simulation_determinism,
        zeta_mc_rate,
        trace_rescaling_invariance,
    ]
}
