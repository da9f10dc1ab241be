//! `vpair` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 numerical failure.

mod args;
mod commands;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

/// Why a run stopped.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Numerical(String),
}

impl From<vpair::Error> for Failure {
    fn from(e: vpair::Error) -> Self {
        use vpair::Error::*;
        match e {
            IntegrationUnstable { .. } | NoConvergence(_) | Singular | Internal(_) => {
                Failure::Numerical(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("vpair: invalid input: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("vpair: numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let config = cli.config.validate()?;
    let text = commands::run(cli.command, &config)?;
    match &config.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("cannot write to stdout: {e}"))),
    }
}
