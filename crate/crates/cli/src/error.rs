use std::fmt;

/// Process exit codes. These values are a stable contract for scripts.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
    /// Names of the failing checks.
    Verify(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Io(_) => exit::IO,
            CliError::Verify(_) => exit::VERIFY_FAILED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "invalid input: {msg}"),
            CliError::Io(msg) => write!(f, "I/O error: {msg}"),
            CliError::Verify(names) => write!(f, "verification failed: {}", names.join(", ")),
        }
    }
}

impl std::error::Error for CliError {}

impl From<erasure_core::Error> for CliError {
    fn from(e: erasure_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
