use thiserror::Error;

/// Errors produced by the combinatorial and spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter failed validation before any work was done.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The determinant route of a Schur function needs pairwise distinct
    /// arguments.
    #[error("arguments {first} and {second} are not distinct (relative separation {separation:.3e})")]
    CoincidentArguments {
        first: usize,
        second: usize,
        separation: f64,
    },

    /// An enumeration or a dense matrix would exceed the configured cap.
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    /// An integer was extracted from a floating-point sum whose distance to
    /// the nearest integer is too large to trust.
    #[error("numeric breakdown: residual {residual:.3e} for value {value}")]
    NumericBreakdown { value: f64, residual: f64 },

    /// Exact polynomial or integer division left a remainder.
    #[error("inexact division: {0}")]
    InexactDivision(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Whether the error is a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
