use thiserror::Error;

/// Failure modes shared by every module. The CLI maps these onto exit codes
/// 2 (input), 3 (resource budget) and 4 (internal invariant).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("resource budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("unbounded: {0}")]
    Unbounded(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn budget(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::Budget {
            what: what.into(),
            needed,
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
