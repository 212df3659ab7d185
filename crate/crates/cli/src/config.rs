use std::path::PathBuf;

use clap::{ArgGroup, Args, Command, FromArgMatches, Subcommand, ValueEnum};
use fracsgn::hurst::WindowPolicy;
use fracsgn::sgn::{ModelSpec, DEFAULT_COORDINATES};
use fracsgn::sim::NoiseScaling;
use serde::{Deserialize, Serialize};

/// Defaults of an argument struct exactly as clap would fill them in.
fn clap_defaults<A: Args + FromArgMatches>() -> A {
    let cmd = A::augment_args(Command::new("defaults"));
    A::from_arg_matches(&cmd.get_matches_from(["defaults"])).expect("every field has a default")
}

macro_rules! default_from_clap {
    ($($t:ty),*) => {
        $(impl Default for $t {
            fn default() -> Self {
                clap_defaults()
            }
        })*
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    /// Tables as CSV files, short text summary on stdout.
    #[default]
    Csv,
    /// Tables as CSV files, summary as JSON on stdout.
    Json,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[command(group(ArgGroup::new("source").required(true).args(["hurst", "alpha"])))]
pub struct GenNoiseArgs {
    /// Fractional Gaussian noise with this Hurst parameter, in (0, 1).
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Symmetric alpha-stable noise with this index, in (0, 2].
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub len: usize,
    /// Time step of each FGN increment.
    #[arg(long, default_value_t = 1.0)]
    pub dt: f64,
    /// Output file; `.csv` writes CSV, anything else FNS1.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct WindowArgs {
    /// Smallest block length; switches to doubling windows.
    #[arg(long)]
    pub min_window: Option<usize>,
    /// Largest block length; switches to doubling windows.
    #[arg(long)]
    pub max_window: Option<usize>,
}

impl WindowArgs {
    /// Doubling windows when either bound is given (missing bounds default
    /// to 8 and N/2), otherwise the automatic policy.
    pub fn policy(&self, n: usize) -> WindowPolicy {
        match (self.min_window, self.max_window) {
            (None, None) => WindowPolicy::Auto,
            (min, max) => WindowPolicy::Doubling {
                min: min.unwrap_or(8),
                max: max.unwrap_or(n / 2),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EstimateHurstArgs {
    /// Series file (FNS1 or CSV), or an SGN trace sidecar (`.json`).
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub windows: WindowArgs,
    /// Scalarization for trace input: `norm` or `coordinate:<index>`.
    #[arg(long, default_value = "norm")]
    pub scalarize: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridName {
    /// H in {0.3, 0.5, 0.7}, a and 1/sigma^2 in {0.5, ..., 2.5}.
    #[value(name = "fig8")]
    #[serde(rename = "fig8")]
    Escape,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct FptArgs {
    /// Run a named parameter grid instead of a single cell.
    #[arg(long, value_enum)]
    pub grid: Option<GridName>,
    #[arg(long, default_value_t = 0.7)]
    pub hurst: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub w0: f64,
    /// Absorbing boundary at +-b.
    #[arg(long, default_value_t = 1.0)]
    pub boundary: f64,
    #[arg(long, default_value_t = 50)]
    pub paths: usize,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Paths still inside at this time are censored.
    #[arg(long, default_value_t = 1000.0)]
    pub t_end: f64,
    /// Permutations for the grid's Spearman tests.
    #[arg(long, default_value_t = 2000)]
    pub permutations: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CalibrateArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    pub hurst: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 10_000)]
    pub len: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub windows: WindowArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct LevyNullArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.6,1.0,1.4,1.8")]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 10_000)]
    pub len: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub windows: WindowArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingArg {
    /// Increment standard deviation `sqrt(dt)` for every H.
    MatchedStep,
    /// Increment standard deviation `dt^H`.
    Physical,
}

impl From<ScalingArg> for NoiseScaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::MatchedStep => NoiseScaling::MatchedStep,
            ScalingArg::Physical => NoiseScaling::Physical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct DriftDistanceArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.7")]
    pub hurst: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub dim: usize,
    #[arg(long, default_value_t = 0.01)]
    pub sigma: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 1)]
    pub sample_every: usize,
    #[arg(long, value_enum, default_value = "matched-step")]
    pub scaling: ScalingArg,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct ConvergenceArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.6,0.75,0.9")]
    pub hurst: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 200)]
    pub paths: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    /// Coarsest step is `2^-coarse`.
    #[arg(long, default_value_t = 6)]
    pub coarse: i32,
    /// Finest (reference) step is `2^-fine`.
    #[arg(long, default_value_t = 12)]
    pub fine: i32,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct DensityCheckArgs {
    #[arg(long, default_value_t = 0.7)]
    pub hurst: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub w0: f64,
    #[arg(long, default_value_t = 2.0)]
    pub t: f64,
    #[arg(long, default_value_t = 10_000)]
    pub paths: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Points of the density grid written to CSV.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Linear,
    Mlp,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct SgnDemoArgs {
    #[arg(long, default_value_t = 32)]
    pub batch: usize,
    #[arg(long, default_value_t = 0.01)]
    pub lr: f64,
    #[arg(long, default_value_t = 5000)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub model: ModelArg,
    /// Hidden width of the MLP.
    #[arg(long, default_value_t = 16)]
    pub hidden: usize,
    #[arg(long, default_value_t = 1024)]
    pub n_samples: usize,
    #[arg(long, default_value_t = 64)]
    pub dim: usize,
    #[arg(long, default_value_t = 0.5)]
    pub noise_sd: f64,
    /// Draw minibatches with replacement.
    #[arg(long)]
    pub replacement: bool,
    #[arg(long, default_value_t = 1)]
    pub log_every: usize,
    /// Coordinates sampled for the Hurst and normality reports.
    #[arg(long, default_value_t = DEFAULT_COORDINATES)]
    pub coordinates: usize,
}

impl SgnDemoArgs {
    pub fn model(&self) -> ModelSpec {
        match self.model {
            ModelArg::Linear => ModelSpec::Linear,
            ModelArg::Mlp => ModelSpec::Mlp { hidden: self.hidden },
        }
    }
}

default_from_clap!(
    FptArgs,
    CalibrateArgs,
    LevyNullArgs,
    DriftDistanceArgs,
    ConvergenceArgs,
    DensityCheckArgs,
    SgnDemoArgs
);

pub const EXPERIMENT_NAMES: &[&str] = &[
    "calibrate",
    "levy-null",
    "drift-distance",
    "convergence",
    "density-check",
    "sgn-demo",
];

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Experiment {
    /// Estimator mean and spread on synthetic FGN per Hurst value.
    Calibrate(CalibrateArgs),
    /// Estimator on i.i.d. stable noise per alpha (should read 1/2).
    LevyNull(LevyNullArgs),
    /// Distance from the origin of a high-dimensional fOU path.
    DriftDistance(DriftDistanceArgs),
    /// Empirical strong order of the Euler scheme.
    Convergence(ConvergenceArgs),
    /// Closed-form state density against simulated endpoints.
    DensityCheck(DensityCheckArgs),
    /// Toy SGD run with SGN logging, Hurst and normality reports.
    SgnDemo(SgnDemoArgs),
}

impl From<Experiment> for RunSpec {
    fn from(e: Experiment) -> Self {
        match e {
            Experiment::Calibrate(a) => RunSpec::Calibrate(a),
            Experiment::LevyNull(a) => RunSpec::LevyNull(a),
            Experiment::DriftDistance(a) => RunSpec::DriftDistance(a),
            Experiment::Convergence(a) => RunSpec::Convergence(a),
            Experiment::DensityCheck(a) => RunSpec::DensityCheck(a),
            Experiment::SgnDemo(a) => RunSpec::SgnDemo(a),
        }
    }
}

/// A command with its fully resolved parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "params", rename_all = "kebab-case")]
pub enum RunSpec {
    GenNoise(GenNoiseArgs),
    EstimateHurst(EstimateHurstArgs),
    Fpt(FptArgs),
    Calibrate(CalibrateArgs),
    LevyNull(LevyNullArgs),
    DriftDistance(DriftDistanceArgs),
    Convergence(ConvergenceArgs),
    DensityCheck(DensityCheckArgs),
    SgnDemo(SgnDemoArgs),
}

impl RunSpec {
    pub fn is_experiment(&self) -> bool {
        !matches!(
            self,
            RunSpec::GenNoise(_) | RunSpec::EstimateHurst(_) | RunSpec::Fpt(_)
        )
    }
}

/// Everything needed to repeat a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub run: RunSpec,
    pub master_seed: u64,
    pub out_dir: PathBuf,
    #[serde(default)]
    pub emit: Emit,
}

impl ExperimentConfig {
    /// Accepts a bare config or a `manifest.json`, whose `config` field is one.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("config: {e}"))?;
        let inner = match value.get("config") {
            Some(c) if value.get("tool").is_some() => c.clone(),
            _ => value,
        };
        let cfg: Self = serde_json::from_value(inner).map_err(|e| format!("config: {e}"))?;
        if !cfg.run.is_experiment() {
            return Err(format!(
                "config files describe experiments ({}); use flags for other commands",
                EXPERIMENT_NAMES.join(", ")
            ));
        }
        Ok(cfg)
    }

    #[cfg(test)]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
