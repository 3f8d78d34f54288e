use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the toolkit.
///
/// Variants are grouped by how a caller is expected to react: malformed input
/// (`Parse`), violated graph preconditions (`Disconnected`), and violated
/// domain preconditions (the rest).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("{what} exceeds the limit of {limit}")]
    GuardExceeded { what: String, limit: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(i64),

    #[error("divisor degrees differ: {0} vs {1}")]
    DegreeMismatch(i64, i64),

    #[error("no edge between `{0}` and `{1}`")]
    MissingEdge(String, String),

    #[error("invalid arithmetical structure: {0}")]
    InvalidStructure(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn guard(what: impl Into<String>, limit: u64) -> Self {
        Error::GuardExceeded {
            what: what.into(),
            limit,
        }
    }
}
