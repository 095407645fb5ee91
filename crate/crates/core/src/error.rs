use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input (bad bitmask, bad element, bad rational literal).
    #[error("input error: {0}")]
    Input(String),

    /// A generator or type was given parameters that violate its invariants.
    #[error("construction error: {0}")]
    Construction(String),

    /// The instance is too large for an exhaustive check.
    #[error("capacity error: {check} supports n <= {max}, got n = {n}")]
    Capacity {
        check: &'static str,
        n: usize,
        max: usize,
    },

    /// A bound was evaluated outside the parameter range its statement covers.
    #[error("domain error: {0}")]
    Domain(String),

    /// A theorem hypothesis was enforced and not met.
    #[error("hypothesis error: {0}")]
    Hypothesis(String),

    /// A precondition of an operation failed on the given data.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Witness and function disagree on dimension.
    #[error("dimension mismatch: expected n = {expected}, got n = {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

impl Error {
    /// Stable machine-readable code used in CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Input(_) => "input_error",
            Error::Construction(_) => "construction_error",
            Error::Capacity { .. } => "capacity_error",
            Error::Domain(_) => "domain_error",
            Error::Hypothesis(_) => "hypothesis_error",
            Error::Precondition(_) => "precondition_error",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
