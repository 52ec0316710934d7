use std::fmt;

use lk_core::LkError;

/// Failure of a command, with its exit code: 2 for bad arguments or input,
/// 1 for everything else.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(LkError),
    Internal(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn input(path: impl fmt::Display, e: std::io::Error) -> Self {
        CliError::Usage(format!("cannot read {path}: {e}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<LkError> for CliError {
    fn from(e: LkError) -> Self {
        match e {
            LkError::Io(_) | LkError::Json(_) | LkError::NonIntegralLinking(_) => CliError::Internal(e.to_string()),
            other => CliError::Validation(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
            CliError::Validation(e) => write!(f, "{e}"),
        }
    }
}
