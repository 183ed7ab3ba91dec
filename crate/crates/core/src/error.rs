use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a shrub word: block {block} violates the heap condition")]
    NotAShrubWord { block: usize },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("search exceeded the node budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{id} is not cached at {} and network access is disabled", path.display())]
    Offline { id: String, path: PathBuf },

    #[error("failed to fetch {id} ({message}); place the b-file at {} manually", path.display())]
    Fetch { id: String, path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn path(msg: impl Into<String>) -> Self {
        Error::InvalidPath(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
