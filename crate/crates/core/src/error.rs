use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    /// An argument outside the domain where the quantity is defined.
    #[error("domain error in {function}: {reason}")]
    Domain {
        function: &'static str,
        reason: String,
    },

    #[error("{operation} is not available for the {law} exit law")]
    UnsupportedLaw {
        law: String,
        operation: &'static str,
    },

    #[error("{what} did not converge within {limit} steps")]
    NoConvergence { what: &'static str, limit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }
}
