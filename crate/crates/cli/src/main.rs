//! Command-line front end for the spin-chain first-digit pipeline.
//!
//! Exit codes: 0 success (including a confirmed detection), 1 usage error,
//! 2 numerical/degenerate/I-O error, 3 scan completed but no detection.

mod config;
mod run;

use clap::error::ErrorKind;
use clap::Parser;

use run::{Cli, CliError};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match run::dispatch(cli) {
        Ok(()) => {}
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(CliError::NoDetection) => std::process::exit(3),
    }
}
