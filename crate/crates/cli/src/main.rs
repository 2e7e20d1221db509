//! `mkpz`: renormalisation constants, oracle checks, tree dumps and
//! simulations from the command line.
//!
//! Exit codes: 0 success, 1 verification failure or failed run (blow-up,
//! I/O), 2 usage error.

mod constants;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mkpz_core::checks::{run_suite, Suite};
use mkpz_core::trees::expand_layer;
use mkpz_core::Rational;

/// Environment variable holding the worker count.
const WORKERS_VAR: &str = "MKPZ_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "mkpz", version, about = "Renormalisation constants and simulations for multi-layer KPZ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact log-divergent constants for a range of layers.
    Constants {
        /// Inclusive range `A..B`, or a single layer.
        #[arg(long)]
        layers: String,
        /// JSON output file.
        #[arg(long)]
        out: PathBuf,
        /// Largest layer computed without complaint.
        #[arg(long, default_value_t = constants::DEFAULT_MAX_LAYER)]
        max_layer: usize,
    },
    /// Run an oracle suite.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Run a simulation described by a TOML config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the labelled trees of one layer at one order.
    Trees {
        #[arg(long)]
        layer: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        order: u8,
    },
}

/// How a command failed, mapped onto the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Failed(_) => 1,
        }
    }
}

impl From<mkpz_core::Error> for Failure {
    fn from(e: mkpz_core::Error) -> Self {
        use mkpz_core::Error as E;
        match e {
            E::Config(_) | E::InvalidArgument(_) | E::Mollifier(_) | E::InsufficientSamples(_) => {
                Self::Usage(e.to_string())
            }
            other => Self::Failed(other.to_string()),
        }
    }
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(WORKERS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Usage(format!("{WORKERS_VAR} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Failed(format!("cannot start {n} workers: {e}")))
}

fn check(suite: &str) -> Result<(), Failure> {
    let suite: Suite = suite.parse().map_err(Failure::Usage)?;
    let results = run_suite(suite);
    for c in &results {
        println!("{c}");
    }
    match results.iter().find(|c| !c.passed) {
        Some(c) => Err(Failure::Failed(format!("{} failed: {}", c.name, c.detail))),
        None => Ok(()),
    }
}

fn trees(layer: usize, order: u8) -> Result<(), Failure> {
    let trees = expand_layer::<Rational>(layer, order.into())?;
    for t in &trees {
        println!("{t}  homogeneity {}", t.homogeneity());
    }
    println!("{} trees", trees.len());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_workers()?;
    match cli.command {
        Command::Constants { layers, out, max_layer } => constants::run(&layers, &out, max_layer),
        Command::Check { suite } => check(&suite),
        Command::Simulate { config, out } => simulate::run(&config, &out),
        Command::Trees { layer, order } => trees(layer, order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Failed(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
