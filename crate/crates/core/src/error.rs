use std::fmt;

use thiserror::Error;

/// Why a graded family of maps fails to be an N-complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The map leaving `degree` has the wrong number of entries or the wrong shape.
    Shape {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// The number of maps does not match the number of degrees.
    MapCount { expected: usize, found: usize },
    /// The composite of N consecutive differentials starting at `start` is nonzero.
    Nilpotency { start: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape {
                degree,
                expected,
                found,
            } => write!(
                f,
                "differential at degree {degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::MapCount { expected, found } => {
                write!(f, "expected {expected} differentials, found {found}")
            }
            Violation::Nilpotency { start } => write!(
                f,
                "nilpotency law fails: composite starting at degree {start} is nonzero"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("F_{modulus} has no element of multiplicative order {order}")]
    NoRootOfUnity { modulus: u32, order: usize },
    #[error("{q} has multiplicative order {actual} in F_{modulus}, expected {expected}")]
    WrongRootOrder {
        q: u32,
        modulus: u32,
        actual: usize,
        expected: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("nilpotency order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("nilpotency order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("length {length} out of range [0, {max}]")]
    LengthOutOfRange { length: usize, max: usize },
    #[error("amplitude {amplitude} out of range [1, {max}]")]
    AmplitudeOutOfRange { amplitude: usize, max: usize },
    #[error("invalid complex: {0}")]
    Invalid(Violation),
    #[error("inconsistent amplitude cohomology table at degree {degree}, amplitude {amplitude}")]
    InconsistentTable { degree: i64, amplitude: usize },
    #[error("decomposition residual is inconsistent at degree {0}")]
    Residual(i64),
    #[error("complex is not positive: nonzero at degree {0}")]
    NotPositive(i64),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Invalid(v)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
