use thiserror::Error;

/// Error type shared across the simulator crates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Matrix or vector dimensions do not conform.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A scalar parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A factorization failed because the matrix is not positive definite.
    #[error("matrix is not Hermitian positive definite")]
    NotPositiveDefinite,

    /// Candidate enumeration would exceed the configured cap.
    #[error("candidate set of size {count} exceeds cap {cap}")]
    CandidateCapExceeded { count: usize, cap: usize },

    /// An internal consistency invariant was violated.
    #[error("consistency violation: {0}")]
    Consistency(String),

    /// I/O failure reported by the harness.
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
