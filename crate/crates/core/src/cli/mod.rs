//! Command-line front end: parameter sweeps with CSV or JSON export.
//!
//! Exit codes: 0 success, 2 domain or validation error, 3 numerical failure.

mod commands;
mod output;
mod sweep;

pub use commands::{cmd_charfunc, cmd_entropy, cmd_generate, cmd_gram, cmd_photon, cmd_synth};
pub use output::{format_real, to_csv, to_json, Field, OutputRecord};
pub use sweep::{IntRange, SweepSpec};

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quasibell",
    version,
    about = "Quasi-Bell states of nonorthogonal pairs: entanglement, Fock-space realization, gate synthesis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fock-space cutoff (number of levels); chosen from the amplitude when absent.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Largest accepted truncation tail mass of a coherent state.
    #[arg(long, default_value_t = crate::fock::DEFAULT_TAIL_TOL)]
    pub tol: f64,
    /// Worker threads for sweep points (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl Default for Common {
    fn default() -> Self {
        Self { format: Format::Csv, out: None, nmax: None, tol: crate::fock::DEFAULT_TAIL_TOL, jobs: None }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EntropyArgs {
    /// Pair overlap, VALUE or MIN:MAX:STEPS.
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    pub kappa: Option<SweepSpec>,
    /// Coherent amplitude (kappa = exp(-2 alpha^2)), VALUE or MIN:MAX:STEPS.
    #[arg(long)]
    pub alpha: Option<SweepSpec>,
    /// Quasi-Bell index 1..4.
    #[arg(long)]
    pub index: usize,
    /// Unequal term weight in [0, 1] (abstract path only).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Evaluate on two truncated bosonic modes (requires --alpha).
    #[arg(long, requires = "alpha")]
    pub fock: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PhotonArgs {
    #[arg(long)]
    pub alpha: SweepSpec,
    #[arg(long)]
    pub index: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CharfuncArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub index: usize,
    /// Half-width of the grid on every real coordinate of (xi, eta).
    #[arg(long, default_value_t = 0.5)]
    pub extent: f64,
    /// Samples per real coordinate; the grid has points^4 rows.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Photon-number cutoff, M or LO:HI.
    #[arg(long = "m-cut")]
    pub m_cut: IntRange,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub kappa: SweepSpec,
}

#[derive(Debug, Clone, Args)]
pub struct GramArgs {
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    pub kappa: Option<SweepSpec>,
    /// Coherent amplitude; inner products are taken between two-mode Fock states.
    #[arg(long)]
    pub alpha: Option<SweepSpec>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy of entanglement, reduced eigenvalues and concurrence.
    Entropy {
        #[command(flatten)]
        args: EntropyArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Mean photon number of the reduced state, closed form against numeric trace.
    Photon {
        #[command(flatten)]
        args: PhotonArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Characteristic function on a grid, numeric against closed form.
    Charfunc {
        #[command(flatten)]
        args: CharfuncArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Finite-order Hadamard synthesis: cutoff error and gate error per M.
    Synth {
        #[command(flatten)]
        args: SynthArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Walsh-Hadamard plus controlled-NOT generation pipeline.
    Generate {
        #[command(flatten)]
        args: GenerateArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Gram matrix of the four quasi-Bell states.
    Gram {
        #[command(flatten)]
        args: GramArgs,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure of a CLI invocation, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_DOMAIN };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: 1, message: e.to_string() }
    }
}

pub(crate) fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError { code: EXIT_DOMAIN, message: "--jobs must be at least 1".into() }),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError { code: 1, message: e.to_string() })?;
            Ok(pool.install(f))
        }
    }
}

/// Evaluates a subcommand to its records.
pub fn evaluate(command: &Command) -> Result<(Vec<OutputRecord>, &Common), CliError> {
    let (records, common) = match command {
        Command::Entropy { args, common } => (with_pool(common.jobs, || cmd_entropy(args, common))??, common),
        Command::Photon { args, common } => (with_pool(common.jobs, || cmd_photon(args, common))??, common),
        Command::Charfunc { args, common } => (with_pool(common.jobs, || cmd_charfunc(args, common))??, common),
        Command::Synth { args, common } => (with_pool(common.jobs, || cmd_synth(args, common))??, common),
        Command::Generate { args, common } => (with_pool(common.jobs, || cmd_generate(args, common))??, common),
        Command::Gram { args, common } => (with_pool(common.jobs, || cmd_gram(args, common))??, common),
    };
    if let Some(col) = records.iter().find_map(|r| r.non_finite()) {
        return Err(CliError { code: EXIT_NUMERICAL, message: format!("non-finite value in column '{col}'") });
    }
    Ok((records, common))
}

/// Runs a parsed invocation, writing output and returning the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let (records, common) = evaluate(&cli.command)?;
    let text = match common.format {
        Format::Csv => to_csv(&records),
        Format::Json => to_json(&records),
    };
    match &common.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError { code: 1, message: format!("{}: {e}", path.display()) })?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
