//! `lasagna`: batch computations of cabled homology of unknots and of the
//! graded centers of arc rings, emitted as JSON, CSV or a table.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lasagna_core::intlinalg::Limits;
use lasagna_core::Error;
use serde_json::json;

use commands::{CenterArgs, DpArgs, S2d2Args};
use report::Format;

const MAX_DIM_VAR: &str = "LASAGNA_MAX_DIM";

#[derive(Debug, Parser)]
#[command(name = "lasagna", version, about = "Cabled unknot homology and arc-ring centers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cabled gl_N homology of a 0-framed unknot or unlink.
    S2d2(S2d2Args),
    /// Cabled gl_2 homology of a framed unknot, from the center of H^n.
    Dp(DpArgs),
    /// Graded ranks and admissible basis of the center of H^n.
    Center(CenterArgs),
}

/// A failure, with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    kind: &'static str,
    message: String,
    code: u8,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { kind: "invalid_config", message: message.into(), code: 2 }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { kind: "internal", message: message.into(), code: 1 }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (kind, code) = match &e {
            Error::InvalidParameter(_) | Error::ExponentOutOfRange { .. } | Error::ParityMixing => ("invalid_config", 2),
            Error::NonzeroFraming(_) => ("nonzero_framing", 2),
            Error::UnstableWindow { .. } => ("unstable_window", 2),
            Error::ResourceCap { .. } | Error::DimensionCap { .. } => ("resource_cap", 3),
            Error::NoIntegerSolution | Error::NotInDual => ("internal", 1),
        };
        let mut message = e.to_string();
        if let Error::NonzeroFraming(_) = e {
            message.push_str("; use `dp` for framed unknots");
        }
        CliError { kind, message, code }
    }
}

fn limits_from_env() -> Result<Limits, CliError> {
    match std::env::var(MAX_DIM_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Limits::new)
            .map_err(|_| CliError::invalid(format!("{MAX_DIM_VAR} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(Limits::default()),
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let limits = limits_from_env()?;
    let report = match &cli.command {
        Command::S2d2(a) => commands::s2d2(a, limits)?,
        Command::Dp(a) => commands::dp(a, limits)?,
        Command::Center(a) => commands::center(a, limits)?,
    };
    let text = report.render(cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::internal(e.to_string()))?,
    }
    Ok(report.oracle_agreement != Some(false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            let err = json!({ "error": { "kind": "oracle_disagreement", "message": "the two routes disagree" } });
            eprintln!("{err}");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": e.kind, "message": e.message } }));
            ExitCode::from(e.code)
        }
    }
}
