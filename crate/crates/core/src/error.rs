use thiserror::Error;

use crate::rational::ParseRationalError;

/// Errors produced by the exact and floating-point evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Parse(#[from] ParseRationalError),

    /// The closed-form partial sum divides by `1 - ratio`.
    #[error("degenerate ratio: closed form is undefined when the ratio equals 1")]
    DegenerateRatio,

    #[error("no catch-up: ratio ≥ 1")]
    NoCatchUp,

    #[error("no accumulation point: ratio ≥ 1")]
    NoAccumulation,

    #[error("resource limit: {requested} steps requested, at most {limit} allowed")]
    ResourceLimit { requested: usize, limit: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors caused by the input itself (bad values, bad text, limits).
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Parse(_) | Error::ResourceLimit { .. }
        )
    }

    /// True when the requested limit does not exist because the series diverges.
    pub fn is_divergent(&self) -> bool {
        matches!(self, Error::NoCatchUp | Error::NoAccumulation)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
