use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element of a {found}-cell algebra used in a {expected}-cell algebra")]
    AlgebraMismatch { expected: usize, found: usize },

    #[error("cell index {index} out of range for {n_cells} cells")]
    CellOutOfRange { index: usize, n_cells: usize },

    #[error("at most {max} cells are supported, got {found}")]
    TooManyCells { max: usize, found: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid cell {index}: {reason}")]
    InvalidCell { index: usize, reason: String },

    #[error("probabilities sum to {sum} ≠ 1")]
    ProbabilitySum { sum: Rational },

    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid fraction {0:?}")]
    InvalidFraction(String),

    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Prefixes the location of a nested configuration error.
    pub fn at(self, path: impl Into<String>) -> Error {
        let path = path.into();
        match self {
            Error::Config { path: inner, message } => Error::Config {
                path: format!("{path}{inner}"),
                message,
            },
            other => Error::Config {
                path,
                message: other.to_string(),
            },
        }
    }
}
