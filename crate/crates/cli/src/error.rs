use std::fmt;

use hnr_core::Error;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Output {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 usage, 3 invalid data, 4 convergence failure, 1 anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_convergence() => 4,
            CliError::Core(_) => 3,
            CliError::Output { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Output { path, source } => write!(f, "cannot write {path}: {source}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub fn missing(flag: &str, algo: &str) -> CliError {
    CliError::Usage(format!("--{flag} is required for --algo {algo}"))
}
