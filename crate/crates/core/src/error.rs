use thiserror::Error;

/// Errors reported by the library.
///
/// Validation failures (bad inputs, exceeded caps) are kept separate from
/// budget exhaustion so that callers can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be positive, got 0")]
    ZeroInput,

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("{context}: expected {expected} components, got {got}")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("vertex cap exceeded: graph would have {needed} vertices (cap {cap})")]
    VertexCap { needed: u64, cap: u64 },

    #[error("matrix realization capped at total dimension {cap}, got {needed}")]
    MatrixCap { needed: u64, cap: u64 },

    #[error("polar space capped at p^2n <= {cap}, got {needed}")]
    PolarCap { needed: u64, cap: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("search budget exhausted after {0} nodes")]
    BudgetExhausted(u64),

    #[error("eigenvalue certification failed: {0}")]
    CertificationFailed(String),

    #[error("sign certification failed for {0}: interval still straddles zero at 200 digits")]
    SignUndecided(String),
}

pub type Result<T> = std::result::Result<T, Error>;
