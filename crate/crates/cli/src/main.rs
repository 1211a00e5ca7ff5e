// SPDX-License-Identifier: Apache-2.0

//! `pqwalk` command-line front end.

mod args;
mod commands;
mod output;
mod repro;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::Cli;

#[derive(Debug)]
pub enum CliError {
    Core(pqwalk::Error),
    Io { path: String, message: String },
    Usage(String),
}

impl From<pqwalk::Error> for CliError {
    fn from(e: pqwalk::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(pqwalk::Error::Parse(_)) | CliError::Io { .. } => 3,
            CliError::Core(pqwalk::Error::CapExceeded { .. }) => 4,
            CliError::Core(_) | CliError::Usage(_) => 2,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Core(e) => json!({"error": e.kind(), "message": e.to_string()}),
            CliError::Io { path, message } => json!({"error": "io", "path": path, "message": message}),
            CliError::Usage(m) => json!({"error": "usage", "message": m}),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail(&CliError::Usage(e.to_string().trim().to_string()));
        }
    };
    if !(cli.tol > 0.0) {
        return fail(&CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let text = match commands::run(&cli) {
        Ok(text) => text,
        Err(e) => return fail(&e),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io {
            path: "<stdout>".into(),
            message: e.to_string(),
        }),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
