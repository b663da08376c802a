use std::process::ExitCode;

use clap::Parser;
use stoc_lab::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stoc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
