//! `fracsgn`: fractional noise generation, Hurst estimation, first-passage
//! simulation and the bundled experiments.

mod commands;
mod config;
mod manifest;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::{run, Failure};
use config::*;

#[derive(Debug, Parser)]
#[command(name = "fracsgn", version, about = "Fractional noise and stochastic-gradient-noise toolkit")]
struct Cli {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for result files and `manifest.json`.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// `json` prints the run summary to stdout as JSON.
    #[arg(long, global = true, value_enum)]
    emit: Option<Emit>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Write an FGN or alpha-stable series (FNS1 or CSV).
    GenNoise(GenNoiseArgs),
    /// R/S Hurst estimate of a series file or SGN trace.
    EstimateHurst(EstimateHurstArgs),
    /// First-passage times of the fractional OU process.
    Fpt(FptArgs),
    /// Bundled experiment recipes.
    Experiments(ExperimentsArgs),
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct ExperimentsArgs {
    /// Run from a config file (or a previous run's manifest.json).
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    name: Option<Experiment>,
}

fn resolve(cli: Cli) -> Result<ExperimentConfig, Failure> {
    let run = match cli.command {
        Cmd::GenNoise(a) => RunSpec::GenNoise(a),
        Cmd::EstimateHurst(a) => RunSpec::EstimateHurst(a),
        Cmd::Fpt(a) => RunSpec::Fpt(a),
        Cmd::Experiments(ExperimentsArgs { name: Some(e), .. }) => e.into(),
        Cmd::Experiments(ExperimentsArgs { config: Some(path), .. }) => {
            let text = fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let mut cfg = ExperimentConfig::from_json(&text).map_err(Failure::Usage)?;
            if let Some(s) = cli.seed {
                cfg.master_seed = s;
            }
            if let Some(d) = cli.out_dir {
                cfg.out_dir = d;
            }
            if let Some(e) = cli.emit {
                cfg.emit = e;
            }
            return Ok(cfg);
        }
        Cmd::Experiments(_) => {
            return Err(Failure::Usage(format!(
                "name an experiment or pass --config; available experiments: {}",
                EXPERIMENT_NAMES.join(", ")
            )))
        }
    };
    Ok(ExperimentConfig {
        run,
        master_seed: cli.seed.unwrap_or(0),
        out_dir: cli.out_dir.unwrap_or_else(|| PathBuf::from(".")),
        emit: cli.emit.unwrap_or_default(),
    })
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let cfg = resolve(cli)?;
    fs::create_dir_all(&cfg.out_dir)?;
    let mut report = run(&cfg)?;
    let manifest = manifest::write_manifest(&cfg, &report.inputs, &report.outputs)?;
    report.outputs.push(manifest);
    // a closed stdout (e.g. piped into `head`) is not an error
    let mut out = std::io::stdout().lock();
    let _ = match cfg.emit {
        Emit::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.summary)?),
        Emit::Csv => report
            .lines
            .iter()
            .cloned()
            .chain(report.outputs.iter().map(|p| format!("wrote {}", p.display())))
            .try_for_each(|line| writeln!(out, "{line}")),
    };
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if e.kind() == ErrorKind::InvalidSubcommand && std::env::args().any(|a| a == "experiments") {
                eprintln!("available experiments: {}", EXPERIMENT_NAMES.join(", "));
            }
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
