use thiserror::Error;

use crate::Complex;

/// Failures surfaced by the numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: Complex },

    #[error("{function}: argument outside its domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: unsupported regime ({detail})")]
    Unsupported {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: no convergence after {iterations} iterations")]
    NonConvergence {
        function: &'static str,
        iterations: usize,
    },

    #[error("{function}: non-finite value at {location}")]
    NonFinite {
        function: &'static str,
        location: String,
    },

    #[error("jet reciprocal needs a non-zero constant term")]
    ZeroConstantTerm,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}

/// Rejects NaN/Inf components.
pub(crate) fn finite(function: &'static str, value: Complex) -> Result<Complex> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite {
            function,
            location: format!("result {value}"),
        })
    }
}
