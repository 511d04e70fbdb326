use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: no FASTA records found")]
    EmptyFasta { path: String },

    #[error("write failed: {0}")]
    Write(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("self-test failed: {failed} of {total} checks")]
    SelftestFailed { failed: usize, total: usize },
}

impl HarnessError {
    /// Process exit status: 1 usage, 2 I/O, 3 self-test failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => 1,
            HarnessError::Read { .. }
            | HarnessError::EmptyFasta { .. }
            | HarnessError::Write(_)
            | HarnessError::Csv(_) => 2,
            HarnessError::SelftestFailed { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
