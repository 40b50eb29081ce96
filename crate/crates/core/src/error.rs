use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("hyperplane {0} is not in the arrangement")]
    NotInArrangement(String),
    #[error("hyperplane {0} is already in the arrangement")]
    Duplicate(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("zero covector does not define a hyperplane")]
    ZeroCovector,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("construction mismatch: {0}")]
    ConstructionMismatch(String),
    #[error("validation failed for {name}: {msg}")]
    Validation { name: String, msg: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
