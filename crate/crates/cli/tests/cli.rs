use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fracsgn(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracsgn"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = fracsgn(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = fracsgn(dir, args);
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn json(path: &Path) -> Value {
    serde_json::from_slice(&fs::read(path).unwrap()).unwrap()
}

#[test]
fn gen_noise_is_bit_identical_and_has_manifest() {
    let d = tempfile::tempdir().unwrap();
    let args = ["gen-noise", "--hurst", "0.7", "--len", "10000", "--seed", "1", "--out", "a.fns"];
    ok(d.path(), &args);
    let first = fs::read(d.path().join("a.fns")).unwrap();
    assert_eq!(first.len(), 25 + 8 * 10_000);
    let m1 = fs::read(d.path().join("manifest.json")).unwrap();
    ok(d.path(), &args);
    assert_eq!(fs::read(d.path().join("a.fns")).unwrap(), first);
    assert_eq!(fs::read(d.path().join("manifest.json")).unwrap(), m1);

    let m = json(&d.path().join("manifest.json"));
    assert_eq!(m["config"]["command"], "gen-noise");
    assert_eq!(m["config"]["master_seed"], 1);
    assert_eq!(m["outputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn validation_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    let (c, err) = code(d.path(), &["gen-noise", "--hurst", "1.2", "--len", "100", "--out", "x.fns"]);
    assert_eq!(c, 2);
    assert!(err.contains("(0, 1)"), "{err}");
    assert!(!d.path().join("x.fns").exists());

    let (c, _) = code(d.path(), &["gen-noise", "--hurst", "0.5", "--alpha", "1.5", "--out", "x.fns"]);
    assert_eq!(c, 2);
    let (c, _) = code(d.path(), &["gen-noise", "--len", "10", "--out", "x.fns"]);
    assert_eq!(c, 2);

    fs::write(d.path().join("bad.fns"), b"not a series").unwrap();
    assert_eq!(code(d.path(), &["estimate-hurst", "--input", "bad.fns"]).0, 2);
    fs::write(d.path().join("bad.csv"), "index,value\n0,1.0\n1,oops\n").unwrap();
    assert_eq!(code(d.path(), &["estimate-hurst", "--input", "bad.csv"]).0, 2);
    assert_eq!(code(d.path(), &["estimate-hurst", "--input", "missing.fns"]).0, 2);

    let (c, _) = code(d.path(), &["fpt", "--boundary", "0.5", "--w0", "0.6"]);
    assert_eq!(c, 2);
}

#[test]
fn unknown_experiment_lists_names() {
    let d = tempfile::tempdir().unwrap();
    let (c, err) = code(d.path(), &["experiments", "frobnicate"]);
    assert_eq!(c, 2);
    for name in ["calibrate", "levy-null", "drift-distance", "convergence", "density-check", "sgn-demo"] {
        assert!(err.contains(name), "{err}");
    }
    assert_eq!(code(d.path(), &["experiments"]).0, 2);
}

#[test]
fn stable_noise_reads_one_half() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["gen-noise", "--alpha", "1.5", "--len", "10000", "--seed", "3", "--out", "s.csv"]);
    let out = ok(d.path(), &["estimate-hurst", "--input", "s.csv", "--emit", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let h = v["hurst"].as_f64().unwrap();
    assert!((h - 0.5).abs() < 0.15, "H = {h}");
}

#[test]
fn estimate_honors_window_flags() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["gen-noise", "--hurst", "0.6", "--len", "10000", "--seed", "5", "--out", "h.fns"]);
    let out = ok(
        d.path(),
        &["estimate-hurst", "--input", "h.fns", "--min-window", "8", "--max-window", "2500", "--emit", "json"],
    );
    let v: Value = serde_json::from_str(&out).unwrap();
    let ks: Vec<u64> = v["windows"].as_array().unwrap().iter().map(|w| w["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, [8, 16, 32, 64, 128, 256, 512, 1024, 2048]);
    let h = v["hurst"].as_f64().unwrap();
    assert!((h - 0.6).abs() <= 0.08, "H = {h}");
    assert_eq!(json(&d.path().join("hurst.json")), v);
    let m = json(&d.path().join("manifest.json"));
    assert_eq!(m["inputs"][0]["bytes"], 25 + 8 * 10_000);
}

#[test]
fn fpt_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let args = |dir: &'static str| ["fpt", "--paths", "1", "--seed", "7", "--out-dir", dir];
    ok(d.path(), &args("a"));
    ok(d.path(), &args("b"));
    let a = fs::read_to_string(d.path().join("a/fpt.csv")).unwrap();
    assert_eq!(a, fs::read_to_string(d.path().join("b/fpt.csv")).unwrap());
    assert!(a.starts_with("path_id,time,censored\n0,"));
    let s = json(&d.path().join("a/fpt_summary.json"));
    assert_eq!(s["summary"]["n_paths"], 1);
}

#[test]
fn small_experiments_run() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    let out = ok(p, &["experiments", "calibrate", "--hurst", "0.3,0.7", "--reps", "4", "--len", "2000", "--emit", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(fs::read_to_string(p.join("calibrate.csv")).unwrap().starts_with("hurst,mean_estimate"));

    ok(p, &["experiments", "levy-null", "--alpha", "1.2", "--reps", "3", "--len", "2000", "--out-dir", "levy"]);
    assert!(p.join("levy/levy_null.csv").exists());

    let out = ok(
        p,
        &["experiments", "drift-distance", "--dim", "50", "--t-end", "1", "--out-dir", "drift", "--emit", "json"],
    );
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terminal"].as_array().unwrap().len(), 3);

    ok(p, &["experiments", "convergence", "--hurst", "0.75", "--paths", "4", "--fine", "9", "--out-dir", "conv"]);
    let csv = fs::read_to_string(p.join("conv/convergence.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3);
    assert_eq!(code(p, &["experiments", "convergence", "--coarse", "6", "--fine", "7"]).0, 2);

    let out = ok(p, &["experiments", "density-check", "--paths", "500", "--out-dir", "dens", "--emit", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["ks_distance"].as_f64().unwrap() < 0.1);
    assert_eq!(code(p, &["experiments", "density-check", "--hurst", "0.4"]).0, 2);
}

#[test]
fn sgn_demo_reproduces_from_manifest() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    ok(p, &["experiments", "sgn-demo", "--steps", "300", "--n-samples", "128", "--dim", "8", "--seed", "11", "--out-dir", "run"]);
    for f in ["sgn_trace.json", "sgn_trace.sgn", "sgn_norm.csv", "sgn_report.json", "manifest.json"] {
        assert!(p.join("run").join(f).exists(), "{f}");
    }
    let report = json(&p.join("run/sgn_report.json"));
    assert_eq!(report["trace"]["steps"], 300);
    assert_eq!(report["trace"]["dim"], 8);
    assert!(report["normality"]["per_coordinate"].as_array().unwrap().len() == 8);

    ok(p, &["experiments", "--config", "run/manifest.json", "--out-dir", "again"]);
    for f in ["sgn_trace.sgn", "sgn_report.json", "sgn_norm.csv"] {
        assert_eq!(fs::read(p.join("run").join(f)).unwrap(), fs::read(p.join("again").join(f)).unwrap(), "{f}");
    }
    let again = json(&p.join("again/manifest.json"));
    assert_eq!(again["config"]["params"], json(&p.join("run/manifest.json"))["config"]["params"]);

    let out = ok(
        p,
        &["estimate-hurst", "--input", "run/sgn_trace.json", "--scalarize", "coordinate:2", "--emit", "json", "--out-dir", "est"],
    );
    assert!(serde_json::from_str::<Value>(&out).unwrap()["hurst"].is_number());
    assert_eq!(code(p, &["estimate-hurst", "--input", "run/sgn_trace.json", "--scalarize", "bogus"]).0, 2);
    assert_eq!(
        code(p, &["estimate-hurst", "--input", "run/sgn_trace.json", "--scalarize", "coordinate:99"]).0,
        2
    );
}

#[test]
fn config_file_with_partial_params() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    fs::write(
        p.join("cfg.json"),
        r#"{"command": "levy-null", "params": {"alpha": [1.5], "reps": 2, "len": 1000}, "master_seed": 4, "out_dir": "out"}"#,
    )
    .unwrap();
    ok(p, &["experiments", "--config", "cfg.json"]);
    let m = json(&p.join("out/manifest.json"));
    assert_eq!(m["config"]["params"]["reps"], 2);
    assert_eq!(m["config"]["master_seed"], 4);
    fs::write(p.join("bad.json"), r#"{"command": "fpt", "params": {}, "master_seed": 1, "out_dir": "."}"#).unwrap();
    assert_eq!(code(p, &["experiments", "--config", "bad.json"]).0, 2);
}

#[test]
fn diverging_training_is_a_runtime_error() {
    let d = tempfile::tempdir().unwrap();
    let (c, err) = code(d.path(), &["experiments", "sgn-demo", "--lr", "50", "--steps", "200", "--n-samples", "64", "--dim", "4"]);
    assert_eq!(c, 1, "{err}");
    assert!(err.contains("diverged"), "{err}");
}
