use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use fracsgn::fou::{density_grid, state_cdf, state_density, state_moments, FouParams};
use fracsgn::hurst::{calibrate_estimator, estimate_hurst, stable_null_table, CalibrationRow, WindowPolicy};
use fracsgn::noise::{generate_fgn, generate_stable, read_series, write_series, SeriesFile, SeriesKind};
use fracsgn::rng::derive_seed;
use fracsgn::sgn::{
    anderson_darling_normality, coordinate_hurst_summary, read_trace, run_toy_trainer, scalarize_trace,
    shapiro_wilk_normality, write_trace, DatasetSpec, Scalarization, TrainConfig, MIN_NORMALITY_LEN,
    SHAPIRO_WILK_MAX_LEN,
};
use fracsgn::sim::{
    analyze_fpt_grid, convergence_slope, drift_distance_experiment, first_passage_mc, fpt_grid,
    simulate_fou_paths, terminal_distances, DistanceRow, DriftConfig, FptGridConfig, SimConfig,
};
use fracsgn::stats::{ks_distance, mean, variance};
use serde_json::{json, Value};

use crate::config::*;

/// Exit status 2 for `Usage`, 1 for `Runtime`.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<fracsgn::Error> for Failure {
    fn from(e: fracsgn::Error) -> Self {
        if e.is_validation() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

/// What a command produced.
#[derive(Debug, Default)]
pub struct Report {
    pub summary: Value,
    pub lines: Vec<String>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
}

impl Report {
    fn write(&mut self, path: PathBuf, f: impl FnOnce(&mut BufWriter<File>) -> Result<(), Failure>) -> Result<(), Failure> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut w = BufWriter::new(File::create(&path)?);
        f(&mut w)?;
        w.flush()?;
        self.outputs.push(path);
        Ok(())
    }

    fn write_json(&mut self, path: PathBuf, value: &Value) -> Result<(), Failure> {
        self.write(path, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            writeln!(w)?;
            Ok(())
        })
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn run(cfg: &ExperimentConfig) -> Outcome {
    let seed = cfg.master_seed;
    let dir = cfg.out_dir.as_path();
    match &cfg.run {
        RunSpec::GenNoise(a) => gen_noise(a, seed),
        RunSpec::EstimateHurst(a) => estimate(a, dir),
        RunSpec::Fpt(a) => fpt(a, seed, dir),
        RunSpec::Calibrate(a) => calibrate(a, seed, dir),
        RunSpec::LevyNull(a) => levy_null(a, seed, dir),
        RunSpec::DriftDistance(a) => drift(a, seed, dir),
        RunSpec::Convergence(a) => convergence(a, seed, dir),
        RunSpec::DensityCheck(a) => density_check(a, seed, dir),
        RunSpec::SgnDemo(a) => sgn_demo(a, seed, dir),
    }
}

fn gen_noise(a: &GenNoiseArgs, seed: u64) -> Outcome {
    let file = match (a.hurst, a.alpha) {
        (Some(h), None) => {
            let s = generate_fgn(h, a.len, a.dt, seed)?;
            SeriesFile::new(SeriesKind::Fgn, h, a.dt, s.values)
        }
        (None, Some(alpha)) => {
            let s = generate_stable(alpha, a.len, seed)?;
            SeriesFile::new(SeriesKind::Stable, alpha, 1.0, s.values)
        }
        _ => return Err(usage("exactly one of --hurst and --alpha is required")),
    };
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    write_series(&a.out, &file)?;
    let kind = if a.hurst.is_some() { "fgn" } else { "stable" };
    let param = a.hurst.or(a.alpha).unwrap_or_default();
    Ok(Report {
        summary: json!({
            "kind": kind,
            "parameter": param,
            "len": file.values.len(),
            "seed": seed,
            "out": a.out,
            "mean": mean(&file.values),
            "std": variance(&file.values, 1).sqrt(),
        }),
        lines: vec![format!("wrote {} {kind} values to {}", file.values.len(), a.out.display())],
        inputs: vec![],
        outputs: vec![a.out.clone()],
    })
}

fn parse_scalarization(s: &str) -> Result<Scalarization, Failure> {
    match s.split_once(':') {
        None if s == "norm" => Ok(Scalarization::Norm),
        Some(("coordinate", j)) => j
            .parse()
            .map(Scalarization::Coordinate)
            .map_err(|_| usage(format!("bad coordinate index `{j}`"))),
        _ => Err(usage(format!("--scalarize must be `norm` or `coordinate:<index>`, got `{s}`"))),
    }
}

fn read_input(a: &EstimateHurstArgs) -> Result<Vec<f64>, Failure> {
    let path = &a.input;
    let bad = |e: fracsgn::Error| usage(format!("{}: {e}", path.display()));
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let mode = parse_scalarization(&a.scalarize)?;
        let trace = read_trace(path).map_err(bad)?;
        Ok(scalarize_trace(&trace, &mode)?)
    } else {
        Ok(read_series(path).map_err(bad)?.values)
    }
}

fn estimate(a: &EstimateHurstArgs, dir: &Path) -> Outcome {
    let values = read_input(a)?;
    let policy = a.windows.policy(values.len());
    let est = estimate_hurst(&values, &policy)?;
    let summary = json!({
        "input": a.input,
        "policy": policy,
        "hurst": est.hurst,
        "intercept": est.intercept,
        "r_squared": est.r_squared,
        "n_points": est.n_points,
        "windows": est.windows,
    });
    let mut r = Report {
        lines: vec![format!(
            "H = {:.4} (r^2 {:.4}, {} windows, {} points)",
            est.hurst,
            est.r_squared,
            est.windows.len(),
            est.n_points
        )],
        inputs: vec![a.input.clone()],
        ..Default::default()
    };
    r.write_json(dir.join("hurst.json"), &summary)?;
    r.write(dir.join("hurst_windows.csv"), |w| {
        writeln!(w, "k,q_k,blocks_used,blocks_skipped")?;
        for s in &est.windows {
            writeln!(w, "{},{},{},{}", s.k, s.q_k, s.m_used, s.m_skipped)?;
        }
        Ok(())
    })?;
    r.summary = summary;
    Ok(r)
}

fn fpt(a: &FptArgs, seed: u64, dir: &Path) -> Outcome {
    let mut r = Report::default();
    match a.grid {
        None => {
            let params = FouParams::new(a.a, a.sigma, a.hurst, a.w0)?;
            let cfg = SimConfig::new(params, a.t_end, a.dt, a.paths, seed)?;
            let batch = first_passage_mc(&cfg, a.boundary)?;
            let s = batch.summary();
            r.write(dir.join("fpt.csv"), |w| Ok(batch.write_csv(w)?))?;
            r.summary = json!({ "config": cfg, "boundary": a.boundary, "summary": s });
            r.lines.push(format!(
                "{} paths: mean exit time {:.4}, censored {:.1}%",
                s.n_paths,
                s.mean_uncensored,
                100.0 * s.censored_fraction
            ));
        }
        Some(GridName::Escape) => {
            let cfg = FptGridConfig {
                n_paths: a.paths,
                dt: a.dt,
                t_end: a.t_end,
                boundary: a.boundary,
                w0: a.w0,
                ..FptGridConfig::escape_grid(seed)
            };
            if !(a.boundary > a.w0.abs()) {
                return Err(usage(format!("boundary must exceed |w0| = {}, got {}", a.w0.abs(), a.boundary)));
            }
            let runs = fpt_grid(&cfg)?;
            let cells: Vec<_> = runs.iter().map(|(c, _)| *c).collect();
            let analysis = analyze_fpt_grid(&cells, a.permutations, seed);
            r.write(dir.join("fpt_grid.csv"), |w| {
                writeln!(w, "hurst,a,inv_sigma2,sigma,path_id,time,censored")?;
                for (c, b) in &runs {
                    for (i, (t, cens)) in b.times.iter().zip(&b.censored).enumerate() {
                        writeln!(w, "{},{},{},{},{i},{t},{}", c.hurst, c.a, c.inv_sigma2, c.sigma, u8::from(*cens))?;
                    }
                }
                Ok(())
            })?;
            r.lines.push(format!(
                "{} cells x {} paths; {} ordering violations in {} comparisons",
                cells.len(),
                a.paths,
                analysis.violations.len(),
                analysis.comparisons
            ));
            for (name, t) in [
                ("H", &analysis.spearman_hurst),
                ("a", &analysis.spearman_a),
                ("sigma", &analysis.spearman_sigma),
            ] {
                r.lines.push(format!("spearman vs {name}: rho {:.3}, p {:.4}", t.rho, t.p_value));
            }
            r.summary = json!({ "grid": cfg, "cells": cells, "analysis": analysis });
        }
    }
    let summary = r.summary.clone();
    r.write_json(dir.join("fpt_summary.json"), &summary)?;
    Ok(r)
}

fn calibration_report(rows: &[CalibrationRow], label: &str, target: impl Fn(f64) -> f64, policy: &WindowPolicy, file: PathBuf) -> Outcome {
    let mut r = Report::default();
    r.write(file, |w| {
        writeln!(w, "{label},mean_estimate,std_estimate,reps,target")?;
        for row in rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                row.parameter,
                row.mean_estimate,
                row.std_estimate,
                row.reps,
                target(row.parameter)
            )?;
        }
        Ok(())
    })?;
    r.lines = rows
        .iter()
        .map(|row| {
            format!(
                "{label}={:<5} mean {:.4}  std {:.4}  target {}",
                row.parameter,
                row.mean_estimate,
                row.std_estimate,
                target(row.parameter)
            )
        })
        .collect();
    r.summary = json!({ "policy": policy, "rows": rows });
    Ok(r)
}

fn calibrate(a: &CalibrateArgs, seed: u64, dir: &Path) -> Outcome {
    let policy = a.windows.policy(a.len);
    let rows = calibrate_estimator(&a.hurst, a.len, a.reps, seed, &policy)?;
    calibration_report(&rows, "hurst", |h| h, &policy, dir.join("calibrate.csv"))
}

fn levy_null(a: &LevyNullArgs, seed: u64, dir: &Path) -> Outcome {
    let policy = a.windows.policy(a.len);
    let rows = stable_null_table(&a.alpha, a.len, a.reps, seed, &policy)?;
    calibration_report(&rows, "alpha", |_| 0.5, &policy, dir.join("levy_null.csv"))
}

fn drift(a: &DriftDistanceArgs, seed: u64, dir: &Path) -> Outcome {
    let mut cfg = DriftConfig::new(a.hurst.clone(), a.dim, a.sigma, a.t_end, a.dt, seed);
    cfg.sample_every = a.sample_every;
    cfg.scaling = a.scaling.into();
    let rows = drift_distance_experiment(&cfg)?;
    let term = terminal_distances(&rows);
    let mut r = Report::default();
    r.write(dir.join("drift_distance.csv"), |w| Ok(DistanceRow::write_csv(&rows, w)?))?;
    r.lines = term
        .iter()
        .map(|(h, d)| format!("H={h}: distance at t={} is {d:.6}", a.t_end))
        .collect();
    let terminal: Vec<Value> = term.iter().map(|(h, d)| json!({ "hurst": h, "distance": d })).collect();
    r.summary = json!({ "config": cfg, "terminal": terminal });
    Ok(r)
}

fn convergence(a: &ConvergenceArgs, seed: u64, dir: &Path) -> Outcome {
    if !(0 <= a.coarse && a.coarse + 2 <= a.fine && a.fine <= 30) {
        return Err(usage(format!(
            "need 0 <= coarse and coarse + 2 <= fine <= 30, got coarse {} fine {}",
            a.coarse, a.fine
        )));
    }
    let dts: Vec<f64> = (a.coarse..=a.fine).map(|e| 2f64.powi(-e)).collect();
    let params: Vec<FouParams<f64>> = a
        .hurst
        .iter()
        .map(|&h| FouParams::new(a.a, a.sigma, h, 0.0))
        .collect::<Result<_, _>>()?;
    let results = params
        .iter()
        .enumerate()
        .map(|(i, p)| convergence_slope(p, &dts, a.t_end, a.paths, derive_seed(seed, i as u64)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = Report::default();
    r.write(dir.join("convergence.csv"), |w| {
        writeln!(w, "hurst,dt,error")?;
        for res in &results {
            for (dt, e) in res.dts.iter().zip(&res.errors) {
                writeln!(w, "{},{dt},{e}", res.hurst)?;
            }
        }
        Ok(())
    })?;
    r.lines = results
        .iter()
        .map(|res| {
            format!(
                "H={}: slope {:.4} (r^2 {:.4}), 2H-1 = {:.2}",
                res.hurst,
                res.slope,
                res.r_squared,
                2.0 * res.hurst - 1.0
            )
        })
        .collect();
    r.summary = json!({ "results": results });
    Ok(r)
}

fn density_check(a: &DensityCheckArgs, seed: u64, dir: &Path) -> Outcome {
    let params = FouParams::new(a.a, a.sigma, a.hurst, a.w0)?;
    params.validate_analytic()?;
    let cfg = SimConfig::new(params, a.t, a.dt, a.paths, seed)?;
    let (m, v) = state_moments(&params, a.t)?;
    let grid = density_grid(&params, a.t, 5.0, a.points)?;
    let curve = state_density(&params, a.t, &grid)?;
    let ens = simulate_fou_paths(&cfg, false)?;
    let ks = ks_distance(&ens.endpoints, state_cdf(&params, a.t)?);
    let (em, ev) = (mean(&ens.endpoints), variance(&ens.endpoints, 1));
    let mut r = Report::default();
    r.write(dir.join("density.csv"), |w| Ok(curve.write_csv(w)?))?;
    r.write(dir.join("endpoints.csv"), |w| {
        writeln!(w, "path_id,w")?;
        for (i, x) in ens.endpoints.iter().enumerate() {
            writeln!(w, "{i},{x}")?;
        }
        Ok(())
    })?;
    r.lines = vec![
        format!("analytic mean {m:.6}, variance {v:.6}"),
        format!("empirical mean {em:.6}, variance {ev:.6} over {} paths", a.paths),
        format!("KS distance {ks:.5}"),
    ];
    r.summary = json!({
        "params": params,
        "t": a.t,
        "analytic_mean": m,
        "analytic_variance": v,
        "empirical_mean": em,
        "empirical_variance": ev,
        "ks_distance": ks,
        "paths": a.paths,
        "dt": a.dt,
    });
    Ok(r)
}

fn sgn_demo(a: &SgnDemoArgs, seed: u64, dir: &Path) -> Outcome {
    let model = a.model();
    let dataset = DatasetSpec {
        n_samples: a.n_samples,
        dim: a.dim,
        noise_sd: a.noise_sd,
        seed: derive_seed(seed, 0),
    };
    let train = TrainConfig {
        replacement: a.replacement,
        log_every: a.log_every,
        ..TrainConfig::new(a.batch, a.lr, a.steps, derive_seed(seed, 1))
    };
    let run = run_toy_trainer::<f64>(&model, &dataset, &train)?;
    let trace = &run.trace;

    let mut r = Report::default();
    fs::create_dir_all(dir)?;
    let (sidecar, matrix) = write_trace(trace, &dir.join("sgn_trace"))?;
    r.outputs.extend([sidecar, matrix]);

    let policy = WindowPolicy::Auto;
    let coords = coordinate_hurst_summary(trace, a.coordinates, derive_seed(seed, 2), &policy);
    let norm_series = scalarize_trace(trace, &Scalarization::Norm)?;
    let norm_hurst = estimate_hurst(&norm_series, &policy);
    r.write(dir.join("sgn_norm.csv"), |w| {
        let f = SeriesFile {
            kind: None,
            param: None,
            step_dt: None,
            values: norm_series.clone(),
        };
        Ok(f.write_csv(w)?)
    })?;

    let chosen: Vec<usize> = match &coords {
        Ok(c) => c.coordinates.clone(),
        Err(_) => (0..trace.dim.min(a.coordinates)).collect(),
    };
    let mut normality = Vec::new();
    let (mut ad_rej, mut sw_rej, mut ad_n, mut sw_n) = (0, 0, 0, 0);
    for &j in &chosen {
        let col = trace.column(j);
        let ad = anderson_darling_normality(&col).ok();
        let sw = if col.len() <= SHAPIRO_WILK_MAX_LEN {
            shapiro_wilk_normality(&col).ok()
        } else {
            None
        };
        if let Some(t) = &ad {
            ad_n += 1;
            ad_rej += usize::from(t.rejects(0.05));
        }
        if let Some(t) = &sw {
            sw_n += 1;
            sw_rej += usize::from(t.rejects(0.05));
        }
        normality.push(json!({ "coordinate": j, "anderson_darling": ad, "shapiro_wilk": sw }));
    }
    let frac = |k: usize, n: usize| if n > 0 { json!(k as f64 / n as f64) } else { Value::Null };

    let final_loss = trace.loss_curve.last().copied().unwrap_or(f64::NAN);
    r.lines.push(format!(
        "{} for {} steps: {} logged SGN vectors of dimension {}, final loss {final_loss:.5}",
        model.describe(),
        a.steps,
        trace.steps,
        trace.dim
    ));
    match &coords {
        Ok(c) => r.lines.push(format!(
            "coordinate Hurst over {} coordinates: mean {:.4}, std {:.4}",
            c.coordinates.len(),
            c.mean,
            c.std
        )),
        Err(e) => r.lines.push(format!("coordinate Hurst unavailable: {e}")),
    }
    match &norm_hurst {
        Ok(e) => r.lines.push(format!("norm-series Hurst {:.4}", e.hurst)),
        Err(e) => r.lines.push(format!("norm-series Hurst unavailable: {e}")),
    }
    r.lines.push(format!(
        "5% normality rejections: Anderson-Darling {ad_rej}/{ad_n}, Shapiro-Wilk {sw_rej}/{sw_n}"
    ));
    if trace.steps < MIN_NORMALITY_LEN {
        r.lines.push(format!("normality tests need at least {MIN_NORMALITY_LEN} logged steps"));
    }

    let summary = json!({
        "model": model,
        "dataset": dataset,
        "train": train,
        "final_loss": final_loss,
        "trace": { "steps": trace.steps, "dim": trace.dim },
        "hurst": {
            "policy": policy,
            "coordinates": coords.as_ref().ok(),
            "coordinates_error": coords.as_ref().err().map(|e| e.to_string()),
            "norm": norm_hurst.as_ref().ok().map(|e| e.hurst),
            "norm_error": norm_hurst.as_ref().err().map(|e| e.to_string()),
        },
        "normality": {
            "level": 0.05,
            "anderson_darling_rejection_rate": frac(ad_rej, ad_n),
            "shapiro_wilk_rejection_rate": frac(sw_rej, sw_n),
            "per_coordinate": normality,
        },
    });
    r.write_json(dir.join("sgn_report.json"), &summary)?;
    r.summary = summary;
    Ok(r)
}
