//! Command-line front end: tabulate basis functions and curves, run the
//! identity-verification suites, and transform Bernstein-form polynomials.
//!
//! Exit codes: 0 on success (all verifications PASS), 1 when an identity
//! check fails or an exact division is impossible, 2 on configuration errors.

use std::process::ExitCode;

use bernstein_kit::Scalar;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod convert;
mod eval;
mod io_util;
mod verify_cmd;

pub use io_util::CliError;

#[derive(Parser)]
#[command(
    name = "bernstein-kit",
    about = "Generalized Bernstein basis functions: evaluation, verification, conversion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate basis functions, distributions, or curves over a grid
    Eval(eval::EvalArgs),
    /// Run an identity-verification suite and emit a JSON report
    Verify(verify_cmd::VerifyArgs),
    /// Transform a Bernstein-form polynomial file
    Convert(convert::ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Rational,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every tabulating/reporting command.
#[derive(Args, Debug, Clone)]
pub struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

/// Parse a scalar literal in the selected backend, naming the flag on error.
pub fn parse_scalar<S: Scalar>(flag: &str, value: &str) -> Result<S, CliError> {
    S::parse_str(value).map_err(|e| CliError::Usage(format!("invalid value for {flag}: {e}")))
}

/// The degree cap from `BERNSTEIN_KIT_MAX_N` (default 10). An explicit
/// `--max-n` is honored up to this cap.
pub fn effective_max_n(flag: Option<u32>) -> Result<u32, CliError> {
    let cap = match std::env::var("BERNSTEIN_KIT_MAX_N") {
        Ok(raw) => raw.parse::<u32>().map_err(|_| {
            CliError::Usage(format!(
                "invalid value for BERNSTEIN_KIT_MAX_N: {raw:?} is not a nonnegative integer"
            ))
        })?,
        Err(_) => 10,
    };
    Ok(flag.map_or(cap, |n| n.min(cap)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => eval::run(args),
        Command::Verify(args) => verify_cmd::run(args),
        Command::Convert(args) => convert::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
