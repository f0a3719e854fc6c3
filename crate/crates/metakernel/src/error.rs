//! Crate-wide error type.

use thiserror::Error;

/// Coarse classification used by callers that must map failures to
/// distinct process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Invalid inputs: bad parameters, malformed data, contract violations.
    Input,
    /// Numerical failures: singularities, non-convergence, overflow guards.
    Numerical,
    /// Filesystem / serialization failures.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid kernel parameters: {0}")]
    InvalidParams(String),

    #[error("tan pole: z*sqrt(alpha/2) = {arg} is within {guard:e} of pi/2 mod pi")]
    TanPole { arg: f64, guard: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("gram evaluation failed at pair ({i}, {j}): {source}")]
    GramEntry {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("coherent states are not comparable: {0}")]
    StateMismatch(String),

    #[error("state expansion needs more than {limit} coefficients before the truncation threshold")]
    StateOverflow { limit: usize },

    #[error("metric is degenerate or singular at z = {z}: {reason}")]
    SingularPoint { z: f64, reason: String },

    #[error("finite differencing did not converge: {0}")]
    FdDidNotConverge(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("embedded iris data failed its checksum (expected {expected}, got {actual})")]
    ChecksumMismatch { expected: String, actual: String },

    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),

    #[error("training input is invalid: {0}")]
    InvalidTrainingData(String),

    #[error("model is incompatible with this input: {0}")]
    ModelMismatch(String),

    #[error("invalid grid specification: {0}")]
    InvalidGrid(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParams(_)
            | Error::DimensionMismatch { .. }
            | Error::StateMismatch(_)
            | Error::InvalidDataset(_)
            | Error::InvalidConfig(_)
            | Error::InvalidTrainingData(_)
            | Error::ModelMismatch(_)
            | Error::InvalidGrid(_) => ErrorKind::Input,
            Error::TanPole { .. }
            | Error::StateOverflow { .. }
            | Error::SingularPoint { .. }
            | Error::FdDidNotConverge(_)
            | Error::ChecksumMismatch { .. } => ErrorKind::Numerical,
            Error::GramEntry { source, .. } => source.kind(),
            Error::Csv(_) | Error::Json(_) | Error::Io(_) => ErrorKind::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
