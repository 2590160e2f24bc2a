use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported size: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Core(#[from] ptclone_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad arguments or sizes beyond the caps, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        use ptclone_core::Error as E;
        match self {
            CliError::Invalid(_) | CliError::Unsupported(_) => 2,
            CliError::Core(E::InvalidArgument(_) | E::Unsupported(_) | E::ResourceLimit(_) | E::UnsupportedDimension(_)) => 2,
            _ => 1,
        }
    }
}
