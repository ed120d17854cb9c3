use std::path::PathBuf;

use plankcap::lp::LpError;

/// Exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    /// Not covered, or a checked bound failed.
    ProbeFailed,
    NotConverged,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::ProbeFailed => 3,
            Status::NotConverged => 4,
        }
    }

    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::ProbeFailed
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] plankcap::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Core(plankcap::Error::Lp(LpError::IterationLimit)) | CliError::Core(plankcap::Error::Stall(_)) => {
                Status::NotConverged.code()
            }
            _ => 2,
        }
    }
}
