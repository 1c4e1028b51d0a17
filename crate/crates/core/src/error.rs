use thiserror::Error;

use crate::models::ModelKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank {rank} out of range: valid ranks are 1..={n}")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("series is empty")]
    EmptySeries,

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    /// Data that parsed but breaks a series invariant. `line` is set when the
    /// offending value came from an input file.
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { line: Option<u64>, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{model} fit needs at least {need} points, got {got}")]
    InsufficientData {
        model: ModelKind,
        need: usize,
        got: usize,
    },

    #[error("singular least-squares system")]
    Singular,

    #[error("fit failed: {0}")]
    FitFailure(String),

    #[error("{model} evaluates to a non-finite or non-positive value at rank {rank}")]
    NonFinite { model: ModelKind, rank: usize },

    #[error("{model}: {source}")]
    Model {
        model: ModelKind,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Error::Validation {
            line: None,
            message: message.into(),
        }
    }

    /// Strips any [`Error::Model`] wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Model { source, .. } => source.root(),
            other => other,
        }
    }
}
