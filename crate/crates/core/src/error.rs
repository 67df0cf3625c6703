use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by group construction, homology and persistence computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("group order {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("subgroup is not normal in {0}")]
    NotNormal(String),
    #[error("group {0} is not abelian")]
    NotAbelian(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("budget exceeded: {what} needs {needed} entries, budget is {budget}")]
    Budget {
        what: String,
        needed: u128,
        budget: u128,
    },
    #[error("malformed data in {file}: {reason}")]
    Data { file: PathBuf, reason: String },
    #[error("inconsistent persistence data: {0}")]
    Inconsistent(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn data(file: impl Into<PathBuf>, reason: impl ToString) -> Self {
        Error::Data {
            file: file.into(),
            reason: reason.to_string(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::OrderCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
