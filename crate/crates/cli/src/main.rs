//! `svderiv`: run set-valued derivative experiments from JSON configs.
//!
//! Exit codes: 0 when all checks pass, 1 when at least one property check
//! fails, 2 on configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use svderiv_core::experiments::{
    cmd_counterexample, cmd_derivative, cmd_montecarlo, cmd_verify, ExperimentConfig, RunReport,
};

#[derive(Parser)]
#[command(
    name = "svderiv",
    version,
    about = "Numerical experiments for set-valued graphical derivatives",
    after_help = "Reports land in --out as <experiment>.csv and <experiment>.json.\n\
                  SVDERIV_THREADS caps worker threads (outputs never depend on it)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify differentiability at sampled graph points.
    Derivative(RunArgs),
    /// Monte-Carlo differentiability sweep (generated/singleton maps).
    Montecarlo(RunArgs),
    /// Lipschitz map with non-Lipschitz exposed-face table.
    Counterexample(CounterexampleArgs),
    /// Run named property suites (witness|calmness|compatibility|iso-vs-lip).
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for the CSV/JSON reports.
    #[arg(long)]
    out: PathBuf,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the number of sampled points.
    #[arg(long)]
    points: Option<usize>,
    /// Override the membership tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Optional config (the counterexample map is built in).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for the CSV/JSON reports.
    #[arg(long)]
    out: PathBuf,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the number of sampled points.
    #[arg(long)]
    points: Option<usize>,
    /// Override the membership tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

fn apply_overrides(
    cfg: &mut ExperimentConfig,
    seed: Option<u64>,
    points: Option<usize>,
    tol: Option<f64>,
) {
    if let Some(seed) = seed {
        // one knob reseeds the whole run, region sampling included
        cfg.seed = seed;
        if let Some(region) = cfg.region.as_mut() {
            region.seed = seed;
        }
    }
    if let Some(points) = points {
        cfg.points = points;
    }
    if let Some(tol) = tol {
        cfg.tol = tol;
    }
}

fn run() -> svderiv_core::Result<RunReport> {
    let cli = Cli::parse();
    match cli.command {
        Command::Derivative(args) => {
            let mut cfg = ExperimentConfig::from_path(&args.config)?;
            apply_overrides(&mut cfg, args.seed, args.points, args.tol);
            cmd_derivative(&cfg, &args.out)
        }
        Command::Montecarlo(args) => {
            let mut cfg = ExperimentConfig::from_path(&args.config)?;
            apply_overrides(&mut cfg, args.seed, args.points, args.tol);
            cmd_montecarlo(&cfg, &args.out)
        }
        Command::Counterexample(args) => {
            let mut cfg = match &args.config {
                Some(path) => ExperimentConfig::from_path(path)?,
                None => ExperimentConfig::default(),
            };
            apply_overrides(&mut cfg, args.seed, args.points, args.tol);
            cmd_counterexample(&cfg, &args.out)
        }
        Command::Verify(args) => {
            let mut cfg = ExperimentConfig::from_path(&args.config)?;
            apply_overrides(&mut cfg, args.seed, args.points, args.tol);
            cmd_verify(&cfg, &args.out)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(report) => {
            println!(
                "{}: {} (v{}, counters: {:?})",
                report.experiment,
                if report.passed { "pass" } else { "FAIL" },
                report.version,
                report.counters
            );
            if report.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("at least one check failed; see the JSON report for details");
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("svderiv: {err}");
            ExitCode::from(2)
        }
    }
}
