use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("coefficient index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite state encountered at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("Newton iteration failed to converge after {iters} iterations (residual {residual:e})")]
    NewtonFailure { iters: usize, residual: f64 },

    #[error("singular Jacobian in Newton iteration")]
    SingularJacobian,

    #[error("singular matrix (pivot column {column})")]
    SingularMatrix { column: usize },

    #[error("stability function has a pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
