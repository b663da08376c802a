use std::path::PathBuf;

use stoc_core::Error as CoreError;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{file}: parse error at line {line}, column {column}: {message}")]
    Syntax {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: schema violation at {pointer}: {message}")]
    Schema {
        file: String,
        pointer: String,
        message: String,
    },
    #[error("{file}: {message}")]
    Invalid { file: String, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0} expectation(s) not met")]
    Mismatch(usize),
}

impl LabError {
    /// 0 pass, 1 expectation mismatch, 2 input error, 3 internal inconsistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Mismatch(_) => 1,
            LabError::Core(CoreError::Inconsistent { .. } | CoreError::BadWitness { .. }) => 3,
            _ => 2,
        }
    }
}
