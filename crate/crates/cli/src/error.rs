use ncomplex::{Error, Violation};
use thiserror::Error;

/// A failed command. Malformed input exits with 1, a mathematical
/// failure with 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error("invalid complex: {0}")]
    Invalid(Violation),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 1,
            CliError::Invalid(_) | CliError::Math(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(v) => CliError::Invalid(v),
            Error::NotPrime(_)
            | Error::InvalidOrder(_)
            | Error::LengthOutOfRange { .. }
            | Error::AmplitudeOutOfRange { .. }
            | Error::FieldMismatch(..)
            | Error::OrderMismatch(..)
            | Error::Shape(_) => CliError::Malformed(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}
