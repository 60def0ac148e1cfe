//! Library side of the `retor` binary: input schemas, report shapes,
//! command implementations, and the bundled corpus. The binary itself
//! only parses arguments and maps errors to exit codes.

use std::fmt;

pub mod commands;
pub mod corpus;
pub mod report;
pub mod schema;

/// Command-level error, classified by exit code: 2 for input and
/// validation problems, 3 for presentations outside the deficiency-1
/// scope, 4 for internal property violations (library bugs).
#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Input(retor_core::Error),
    Unsupported(retor_core::Error),
    Internal(String),
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        CliError::Schema(message.into())
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError::Internal(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(msg) => write!(f, "invalid input: {msg}"),
            CliError::Input(e) => write!(f, "validation failed: {e}"),
            CliError::Unsupported(e) => write!(f, "unsupported: {e}"),
            CliError::Internal(msg) => write!(f, "internal property violation: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<retor_core::Error> for CliError {
    fn from(e: retor_core::Error) -> Self {
        match e {
            retor_core::Error::WrongDeficiency { .. } => CliError::Unsupported(e),
            retor_core::Error::NonSquareMatrix { .. } | retor_core::Error::ZeroDenominator => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Input(e),
        }
    }
}
