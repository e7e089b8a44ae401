use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Every variant carries a human-readable description; the variant itself
/// is what callers match on to pick an exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Operands live in different rings, modules or fields.
    #[error("context mismatch: {0}")]
    Context(String),
    /// An operation was asked for outside its domain (non-divisible quotient,
    /// negative power, non-monomial input to a monomial routine, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition does not hold (e.g. length of a non m-primary quotient).
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The working-degree guard or another resource limit was hit.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A Hilbert-Samuel table did not become polynomial within the allowed range.
    #[error("no stabilization: {0}")]
    Stabilization(String),
    /// Random choices kept failing their verification.
    #[error("genericity failure: {0}")]
    Genericity(String),
    /// Polynomial text could not be parsed.
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
