use std::fmt;

use sfperc_core::CoreError;

/// Top-level CLI error with the exit-code mapping:
/// 2 config validation, 3 resource/budget guard, 4 numerical failure.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                CoreError::Budget(_) => 3,
                CoreError::Numerical(_) => 4,
                // Everything else means the requested computation is not
                // defined for the configured parameters.
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config validation: {msg}"),
            CliError::Io(msg) => write!(f, "io: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
