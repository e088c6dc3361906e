use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (e.g. `Im tau <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated sum or product did not meet its tail bound.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Evaluation hit (or came within the pole threshold of) a pole.
    #[error("pole: {0}")]
    Pole(String),

    #[error("quarter prefactor mismatch: {lhs} vs {rhs}")]
    GradeMismatch { lhs: i64, rhs: i64 },

    /// A shift left a series with no exact coefficients.
    #[error("order underflow: shifted series would have order {0}")]
    OrderUnderflow(i64),

    /// A half-period shift mixed monomial parities, producing grades that do
    /// not share a common quarter-prefactor.
    #[error("shift produces mixed grades modulo q")]
    NonIntegralGrade,

    /// The truncated tail of a series is not described by a known model, so a
    /// shift cannot bound where the unknown terms land.
    #[error("cannot shift a series whose truncated tail is unbounded")]
    UnboundedTail,

    #[error("identity {0} has no formal certification mode")]
    UnsupportedFormal(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
