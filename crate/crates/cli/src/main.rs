//! `mdyck`: batch front end for the markov-dyck library.
//!
//! Exit status: 0 on success, 1 on input errors, 2 when a verification check
//! fails (including any published display that disagrees with its oracle),
//! 3 when the census budget is exhausted.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::config::{Cli, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<markov_dyck::Error> for CliError {
    fn from(e: markov_dyck::Error) -> Self {
        use markov_dyck::Error as E;
        match e {
            E::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            E::Certification { .. } | E::NonStabilization(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match RunConfig::from_cli(cli).and_then(|config| commands::run(&config)) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.body.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if output.mismatch {
                eprintln!("mdyck: verification mismatch");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("mdyck: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
