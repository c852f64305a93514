use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Cholesky hit a nonpositive pivot.
    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("iteration limit of {0} reached")]
    IterationLimit(usize),

    /// Solution recovery requires ‖d‖∞ ≤ 1.
    #[error("Newton direction too large for recovery (‖d‖∞ = {0})")]
    DirectionTooLarge(f64),

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// True for failures that a solver reports as `NumericalFailure`.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. } | Error::Numerical(_) | Error::DirectionTooLarge(_)
        )
    }
}
