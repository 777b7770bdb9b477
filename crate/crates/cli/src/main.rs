//! gbell: generate, analyze, sweep, and verify two-mode Gaussian states.

mod commands;
mod state_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "gbell",
    version,
    about = "Bell nonlocality and entanglement of two-mode Gaussian states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a two-mode squeezed vacuum state file, optionally sent through
    /// an attenuating thermal channel
    Tmsv {
        /// Squeezing parameter (>= 0)
        #[arg(long)]
        r: f64,
        /// Thermal occupation of the environment (>= 0)
        #[arg(long, default_value_t = 0.0)]
        thermal: f64,
        /// Channel transmissivity in [0, 1]; 1 means additive thermal noise only
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        /// Output JSON path
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyze a state file: purity, standard form, Bell maximum,
    /// entanglement, and the locality/separability verdict
    Check {
        /// Input state JSON
        #[arg(long)]
        input: PathBuf,
        /// Cross-check the closed-form Bell maximum with the numeric optimizer
        #[arg(long)]
        oracle: bool,
        /// Emit one JSON report instead of text lines
        #[arg(long)]
        json: bool,
    },
    /// Tabulate squeezing/thermal/transmissivity grids into a CSV file
    Sweep {
        /// Squeezing range start:stop:step, or a single value
        #[arg(long)]
        r: String,
        /// Thermal occupation range (same syntax)
        #[arg(long, default_value = "0")]
        thermal: String,
        /// Transmissivity range (same syntax)
        #[arg(long, default_value = "1")]
        eta: String,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the inequality grids and scan sampled states for
    /// nonlocal-but-separable counterexamples
    Verify {
        /// Number of sampled states
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Sampler seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Upper edge of the sampled mode-variance box
        #[arg(long = "n-max", default_value_t = 3.0)]
        n_max: f64,
        /// Emit one JSON report instead of text lines
        #[arg(long)]
        json: bool,
    },
}

/// Failures mapped onto the documented exit codes: 0 success, 1 theorem
/// violation, 2 unphysical or otherwise invalid state, 64 usage, 74 I/O.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    State(gaussian_bell::Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::State(e) => write!(f, "{e}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::State(_) => 2,
            CliError::Io(_) => 74,
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Tmsv { r, thermal, eta, out } => commands::tmsv(r, thermal, eta, &out),
        Command::Check { input, oracle, json } => commands::check(&input, oracle, json),
        Command::Sweep { r, thermal, eta, out } => commands::sweep(&r, &thermal, &eta, &out),
        Command::Verify { samples, seed, n_max, json } => {
            commands::verify(samples, seed, n_max, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
