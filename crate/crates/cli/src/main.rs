//! `pmm`: run the randomized matrix-inequality verification suite.
//!
//! Exit codes: 0 = aggregate pass, 1 = unexpected violation (or checker
//! error), 2 = usage or I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use pmm_cli::config::{self, ConfigLayer, SuiteConfig, UsageError};
use pmm_cli::{emit_report, run_suite};

#[derive(Parser, Debug)]
#[command(
    name = "pmm",
    version,
    about = "Randomized Loewner-order verification of positive-multilinear-map inequalities"
)]
struct Cli {
    /// Comma-separated check families to run (default: all)
    #[arg(long)]
    checks: Option<String>,

    /// Input matrix dimension q
    #[arg(long)]
    q: Option<usize>,

    /// Map arity k
    #[arg(long)]
    k: Option<usize>,

    /// Outer arity n (information-monotonicity checks) and Kantorovich
    /// term count
    #[arg(long)]
    n: Option<usize>,

    /// Trials per check
    #[arg(long)]
    trials: Option<usize>,

    /// Master seed
    #[arg(long)]
    seed: Option<u64>,

    /// Relative Loewner tolerance
    #[arg(long)]
    tol: Option<f64>,

    /// Spectrum bounds "m,M" for random positive draws
    #[arg(long)]
    spectrum: Option<String>,

    /// Report output path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Directory for witness files of unexpected violations
    #[arg(long)]
    witness_dir: Option<PathBuf>,

    /// Worker threads (0 = default)
    #[arg(long)]
    jobs: Option<usize>,

    /// JSON config file (flags and PMM_* env vars override it)
    #[arg(long)]
    config: Option<PathBuf>,
}

fn layer_from_cli(cli: &Cli) -> Result<ConfigLayer, UsageError> {
    Ok(ConfigLayer {
        checks: cli.checks.as_deref().map(config::parse_checks),
        q: cli.q,
        k: cli.k,
        n: cli.n,
        trials: cli.trials,
        seed: cli.seed,
        tol: cli.tol,
        spectrum: cli.spectrum.as_deref().map(config::parse_spectrum).transpose()?,
        out: cli.out.clone(),
        witness_dir: cli.witness_dir.clone(),
        jobs: cli.jobs,
    })
}

fn resolve_config(cli: &Cli) -> Result<SuiteConfig, UsageError> {
    let mut layers = Vec::new();
    if let Some(path) = &cli.config {
        layers.push(config::layer_from_file(path)?);
    }
    layers.push(config::layer_from_env()?);
    layers.push(layer_from_cli(cli)?);
    config::resolve(&layers)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve_config(&cli) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };

    if cfg.jobs > 0 {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build_global()
        {
            eprintln!("error: cannot configure {} jobs: {err}", cfg.jobs);
            return ExitCode::from(2);
        }
    }

    let report = match run_suite(&cfg) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };

    if let Err(err) = emit_report(&report, cfg.out.as_deref()) {
        eprintln!("error: cannot write report: {err}");
        return ExitCode::from(2);
    }

    if report.aggregate {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
