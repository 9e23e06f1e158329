use std::process::ExitCode;

use clap::Parser;
use lattice_digits_cli::args::Cli;
use lattice_digits_cli::{run, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(name)) => {
            eprintln!("check failed: {name}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
