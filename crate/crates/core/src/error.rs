use alloc::string::String;

use thiserror::Error;

use crate::bps::Kind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("expected a {expected} vector, got a {found} vector")]
    KindMismatch { expected: Kind, found: Kind },

    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("matrix is not unit lower triangular: {0}")]
    NotUnitLowerTriangular(String),

    /// The divisor sum for `DT_n^(m)` was not a nonnegative multiple of `n^2`.
    #[error("DT closed form broke integrality at m = {m}, n = {n}: {value}")]
    FormulaIntegrity { m: u32, n: u32, value: String },

    #[error("Euler series is inconsistent: DT_{n} = {value} is not an integer")]
    NonIntegralDt { n: usize, value: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for failures of an internal consistency check rather than of the
    /// caller's input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::FormulaIntegrity { .. })
    }
}
