//! Command-line front end for `ptclone-core`.

pub mod config;
pub mod error;
pub mod output;
pub mod report;
pub mod run;

pub use config::{Cli, RunConfig};
pub use error::CliError;
pub use report::report_schema_version;
pub use run::{run, RunOutput};

use std::io::Write;
use std::path::Path;

/// Runs a configuration and writes its output to `--out` or stdout.
/// Returns the process exit code.
pub fn execute(config: &RunConfig) -> Result<u8, CliError> {
    let out = run(config)?;
    match &config.out_path {
        Some(path) => output::write_atomic(Path::new(path), &out.body)?,
        None => std::io::stdout().write_all(out.body.as_bytes())?,
    }
    Ok(if out.passed { 0 } else { 1 })
}
