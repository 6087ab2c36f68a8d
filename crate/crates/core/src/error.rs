use thiserror::Error;

/// Errors raised by arithmetic, constructions and file handling.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {from} does not divide target order {to}")]
    NotDivisibleOrder { from: u32, to: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("zero polynomial is not a valid divisor")]
    ZeroDivisor,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("hyperplane index {index} out of range for arrangement with {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation requires a nonempty arrangement")]
    EmptyArrangement,
    #[error("not a flat of this arrangement: {0}")]
    NotAFlat(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("row {row}: {message}")]
    BadRow { row: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
