use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the exact-path cap of {cap}; use the grid or Monte Carlo measures")]
    DimensionCap { dim: usize, cap: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("grid resolution mismatch: {0}")]
    ResolutionMismatch(String),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed set description: {0}")]
    Parse(String),
    #[error("precision of {bits} bits is too low to certify the result")]
    PrecisionTooLow { bits: u32 },
    #[error("size guard: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
