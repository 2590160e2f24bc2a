use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A numerical result contradicts a structural identity (for example an
    /// eigenvalue multiplicity pattern that matches no branching pattern).
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("unsupported dimension {0}: exact hulls exist only for 2 or 3 clones")]
    UnsupportedDimension(usize),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidArgument(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
