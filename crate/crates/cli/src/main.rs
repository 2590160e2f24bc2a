use std::process::ExitCode;

use clap::Parser;
use ptclone::{execute, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).and_then(|config| execute(&config));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ptclone: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
