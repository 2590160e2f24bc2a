use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptclone_core::regions::NPointConvention;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Largest `n` accepted by any command.
pub const MAX_N: usize = 6;
/// Largest `d^n` accepted by the dense-oracle commands (`check`, `channels`).
pub const MAX_ORACLE_DIM: usize = ptclone_core::oracle::MAX_DENSE_DIM;

const CAPS: &str = "Caps: n <= 6 for every command; d^n <= 4096 for the oracle commands `check` and `channels`; \
`hull` needs n <= 4 (at most three clones).";

#[derive(Debug, Parser)]
#[command(name = "ptclone", version, about = "Irreps of partially transposed permutation algebras and 1->N cloning fidelity regions", after_help = CAPS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Emit the block decomposition as JSON.
    Irreps,
    /// Emit sampled block regions and the N-point.
    Region,
    /// Emit the convex hull of the fidelity region (n = 3 or 4).
    Hull,
    /// Run the algebra-relation and spectrum-oracle suite; exit 1 on failure.
    Check,
    /// Sample Haar channels and report fidelity vectors with membership verdicts.
    Channels,
    /// Print the symmetric optimum and the Werner reference.
    Symmetric,
    /// Convert between singlet fraction and clone fidelity.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ConvertArgs {
    /// Singlet fraction to convert to a clone fidelity.
    #[arg(long)]
    pub singlet: Option<f64>,
    /// Clone fidelity to convert to a singlet fraction.
    #[arg(long)]
    pub fidelity: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Number of systems (one input plus n - 1 clones).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Local dimension.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// States per block (region, hull) or channels (channels).
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output file, written atomically; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; `channels` defaults to csv, `symmetric` and `convert` print text unless set.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum, default_value_t = Convention::OneOverD)]
    pub n_point_convention: Convention,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Irreps,
    Region,
    Hull,
    Check,
    Channels,
    Symmetric,
    Convert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Convention {
    #[serde(rename = "paper_1_over_d")]
    #[value(name = "paper_1_over_d")]
    OneOverD,
    #[serde(rename = "zero")]
    #[value(name = "zero")]
    Zero,
    #[serde(rename = "product_1_over_d2")]
    #[value(name = "product_1_over_d2")]
    OneOverDSquared,
}

impl From<Convention> for NPointConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::OneOverD => NPointConvention::OneOverD,
            Convention::Zero => NPointConvention::Zero,
            Convention::OneOverDSquared => NPointConvention::OneOverDSquared,
        }
    }
}

/// Fully resolved and validated run configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub out_path: Option<String>,
    pub format: Format,
    pub n_point_convention: Convention,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub singlet: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fidelity: Option<f64>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let c = cli.common;
        let (command, singlet, fidelity) = match cli.command {
            CommandArgs::Irreps => (Command::Irreps, None, None),
            CommandArgs::Region => (Command::Region, None, None),
            CommandArgs::Hull => (Command::Hull, None, None),
            CommandArgs::Check => (Command::Check, None, None),
            CommandArgs::Channels => (Command::Channels, None, None),
            CommandArgs::Symmetric => (Command::Symmetric, None, None),
            CommandArgs::Convert(a) => (Command::Convert, a.singlet, a.fidelity),
        };
        let format = c.format.unwrap_or(match command {
            Command::Channels => Format::Csv,
            Command::Symmetric | Command::Convert => Format::Text,
            _ => Format::Json,
        });
        let d = c.d.ok_or_else(|| CliError::Invalid("--d is required".into()))?;
        let config = RunConfig {
            command,
            n: c.n,
            d,
            samples: c.samples,
            seed: c.seed,
            tol: c.tol,
            out_path: c.out.map(|p| p.to_string_lossy().into_owned()),
            format,
            n_point_convention: c.n_point_convention,
            singlet,
            fidelity,
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks the invariants and the size caps.
    pub fn validate(&self) -> Result<(), CliError> {
        let invalid = |m: String| Err(CliError::Invalid(m));
        if self.d < 2 {
            return invalid(format!("--d must be at least 2, got {}", self.d));
        }
        if self.samples < 1 {
            return invalid("--samples must be at least 1".into());
        }
        if self.tol.is_nan() || self.tol <= 0.0 || !self.tol.is_finite() {
            return invalid(format!("--tol must be positive, got {}", self.tol));
        }
        if self.command == Command::Convert {
            return Ok(());
        }
        let n = self.n.ok_or_else(|| CliError::Invalid("--n is required".into()))?;
        if n < 3 {
            return invalid(format!("--n must be at least 3, got {}", n));
        }
        if n > MAX_N {
            return Err(CliError::Unsupported(format!("n = {} exceeds the cap n <= {}", n, MAX_N)));
        }
        match self.command {
            Command::Hull if n > 4 => Err(CliError::Unsupported(format!(
                "hull needs at most three clones (n <= 4), got n = {}; use support or membership queries instead",
                n
            ))),
            Command::Check | Command::Channels => {
                let dim = self.d.checked_pow(n as u32).filter(|&x| x <= MAX_ORACLE_DIM);
                match dim {
                    Some(_) => Ok(()),
                    None => Err(CliError::Unsupported(format!(
                        "d^n = {}^{} exceeds the dense-oracle cap d^n <= {}",
                        self.d, n, MAX_ORACLE_DIM
                    ))),
                }
            }
            _ => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        self.n.expect("validated")
    }
}
