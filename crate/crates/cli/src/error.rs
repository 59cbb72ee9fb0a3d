use serde_json::{json, Value};
use std::path::PathBuf;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] schur_lattice::Error),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: invalid JSON: {message}")]
    Json { path: PathBuf, message: String },
    #[error("rank {rank} exceeds --max-rank {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Io { .. } => "Io",
            CliError::Json { .. } => "Malformed",
            CliError::RankTooLarge { .. } => "RankTooLarge",
            CliError::Usage(_) => "Usage",
        }
    }

    pub fn exit_code(&self) -> i32 {
        use schur_lattice::Error as E;
        match self {
            CliError::Lib(E::NotFound(..) | E::AtlasIncomplete(_)) => EXIT_NOT_FOUND,
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_VALIDATION,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.code(), "detail": self.to_string() })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
