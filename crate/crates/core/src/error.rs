use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("division by a series that vanishes to its truncation order")]
    ZeroSeries,

    /// A series operation was called outside its domain (pole part where a
    /// power series is required, wrong constant term, ...).
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("insufficient series order: need {needed}, have {available}")]
    InsufficientOrder { needed: i64, available: i64 },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("unknown class {0}")]
    UnknownClass(String),

    #[error("class {0} has no usable seed data")]
    Unavailable(String),

    #[error("registry: {0}")]
    Registry(String),

    #[error("replication inconsistency for {label} at n = {n}: {reason}")]
    ReplicationInconsistency {
        label: String,
        n: i64,
        reason: String,
    },

    #[error("degrees exhausted: no Q-value with deg N <= {max_r} and deg M <= {max_s}")]
    DegreesExhausted { max_r: usize, max_s: usize },

    #[error("invalid Q-value: {0}")]
    InvalidQValue(String),

    #[error("invalid hypergeometric parameters: {0}")]
    InvalidParameters(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
