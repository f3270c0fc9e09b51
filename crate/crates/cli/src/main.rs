//! `jnc`: neighborhood-centrality toolkit.
//!
//! Subcommands: `generate` (seeded artificial networks), `compute` (per-vertex
//! centrality CSV), `analyze` (distribution reports), `verify` (spectral and
//! Cheeger bound checks), `reproduce` (the full artificial-vs-real comparison
//! bundle). Every command is deterministic given its flags; reruns produce
//! byte-identical output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
//! input-data error.

mod commands;
mod report;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "jnc", version, about = "Neighborhood centralities on undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where a graph comes from: an edge-list file or a generator spec.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file ("u v" lines; '#'/'%' comments ignored)
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Generator spec, e.g. "er:n=1000,p=0.02,seed=1"
    #[arg(long = "gen", value_name = "SPEC")]
    gen: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an artificial network and write it as a canonical edge list
    Generate {
        /// Generator spec: er:n=..,p=..,seed=.. | ba:n=..,m=..,seed=.. |
        /// ws:n=..,k=..,p=..,seed=.. | bhl:n=..,m=..,n0=..,seed=..
        #[arg(long = "gen", value_name = "SPEC")]
        gen: String,
        /// Output file (stdout when omitted)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },

    /// Compute xi^j for every vertex and write the centrality CSV
    Compute {
        #[command(flatten)]
        source: Source,
        /// Largest depth j to compute
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        /// Output CSV (stdout when omitted)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Worker threads (default: available parallelism)
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
    },

    /// Distribution reports (histogram, log-frequency fit, skewness, verdict)
    Analyze {
        /// Edge-list file or centrality CSV from `compute`
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        /// Histogram bins
        #[arg(long, default_value_t = 50)]
        bins: usize,
        /// Minimum R-squared for an exponential-like verdict
        #[arg(long, default_value_t = 0.8)]
        r2: f64,
        /// Minimum sample skewness for an exponential-like verdict
        #[arg(long, default_value_t = 0.5)]
        skew: f64,
        /// Output directory (created if missing)
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
    },

    /// Check xi <= lambda_max and (n <= 20) xi >= h(G); exit 1 on violation
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        /// Tolerance for the floating-point upper-bound comparison
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Seed for the power-iteration start vector
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Report JSON output (stdout when omitted)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
    },

    /// Generate all four artificial networks, compute, analyze, and compare
    Reproduce {
        /// Output directory for the whole bundle
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Vertex-count scale factor; densities keep the mean degree
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Seed driving every generator (per-model streams stay distinct)
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        #[arg(long, default_value_t = 50)]
        bins: usize,
        #[arg(long, default_value_t = 0.8)]
        r2: f64,
        #[arg(long, default_value_t = 0.5)]
        skew: f64,
        /// Real edge-list files to include in the comparison (repeatable)
        #[arg(long = "real", value_name = "PATH")]
        real: Vec<PathBuf>,
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
    },
}

/// Failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, specs, or parameters (exit 2).
    Usage(String),
    /// Unreadable, unwritable, or malformed data (exit 3).
    Io(String),
    /// At least one verified bound was violated (exit 1).
    Violations(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Violations(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Violations(count) => {
                write!(f, "{count} bound check(s) violated")
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<jnc_core::Error> for CliError {
    fn from(e: jnc_core::Error) -> Self {
        match e {
            jnc_core::Error::InvalidSpec { .. } | jnc_core::Error::InvalidParameters(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Io(other.to_string()),
        }
    }
}

fn configure_workers(workers: Option<usize>) {
    if let Some(n) = workers {
        // Ignore the error when a pool already exists (tests call run twice).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate { gen, out } => commands::generate(&gen, out.as_deref()),
        Command::Compute { source, jmax, out, workers } => {
            configure_workers(workers);
            commands::compute(&source, jmax, out.as_deref())
        }
        Command::Analyze { source, jmax, bins, r2, skew, out, workers } => {
            configure_workers(workers);
            let thresholds = jnc_core::analysis::Thresholds { r_squared: r2, skewness: skew };
            commands::analyze(&source, jmax, bins, &thresholds, &out)
        }
        Command::Verify { source, jmax, tol, seed, out, workers } => {
            configure_workers(workers);
            commands::verify(&source, jmax, tol, seed, out.as_deref())
        }
        Command::Reproduce { out, scale, seed, jmax, bins, r2, skew, real, workers } => {
            configure_workers(workers);
            let thresholds = jnc_core::analysis::Thresholds { r_squared: r2, skewness: skew };
            reproduce::reproduce(&reproduce::ReproduceConfig {
                out,
                scale,
                seed,
                j_max: jmax,
                bins,
                thresholds,
                real,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help/--version.
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
