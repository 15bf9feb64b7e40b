//! `qeuler`: compute (h,q)-Euler polynomials, q-Euler zeta values and
//! alternating q-power sums, verify their symmetry identities on grids and
//! emit tables.
//!
//! Exit status: 0 when everything passed, 1 when a check failed, 2 on
//! invalid input.

mod args;
mod commands;
mod output;

use std::fs;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] qeuler_core::Error),
    #[error("i/o error: {0}")]
    Io(String),
    /// Some grid points could not be evaluated; the reports are still printed.
    #[error("{message}")]
    Rejected { output: String, message: String },
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Invalid(format!("--jobs: {e}")))?;
    let rendered = pool.install(|| match &cli.command {
        Command::Euler(a) => commands::euler(a, cli.format),
        Command::Zeta(a) => commands::zeta(a, cli.format),
        Command::Ssum(a) => commands::ssum(a, cli.format),
        Command::Verify(a) => commands::verify(a, cli.format),
        Command::Table(a) => commands::table(a, cli.format),
    });
    match rendered {
        Ok(r) => {
            emit(cli, &r.text)?;
            Ok(r.passed)
        }
        Err(CliError::Rejected { output, message }) => {
            emit(cli, &output)?;
            Err(CliError::Invalid(message))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
