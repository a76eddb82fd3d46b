use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs violate a mathematical precondition (non-prime p, k > m/e, ...).
    #[error("parameter error: {0}")]
    Param(String),

    /// A requested enumeration is larger than the configured budget.
    #[error("budget exceeded: {what} requires {required} enumerations, budget is {budget}")]
    Budget {
        what: String,
        required: String,
        budget: String,
    },

    /// An operation was applied outside its domain (e.g. inverting zero).
    #[error("domain error: {0}")]
    Domain(String),

    /// The dense eigensolver failed to reach tolerance.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// An internal consistency check failed. Never expected on valid inputs.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn budget(
        what: impl Into<String>,
        required: impl ToString,
        budget: impl ToString,
    ) -> Self {
        Error::Budget {
            what: what.into(),
            required: required.to_string(),
            budget: budget.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
