use std::io;

use thiserror::Error;

/// Errors raised anywhere in the construction and certification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator in rational {numerator}/0")]
    ZeroDenominator { numerator: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("gram matrix diagonal entry {index} is not 1")]
    NonUnitDiagonal { index: usize },

    #[error("code is not antipodal: point {index} has no antipode")]
    NotAntipodal { index: usize },

    #[error("antipodal codes need an even number of points, got {0}")]
    OddPointCount(usize),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error(
        "points are not equinorm: point {index} has squared norm {found}, expected {expected}"
    )]
    NotEquinorm {
        index: usize,
        found: u64,
        expected: u64,
    },

    #[error("duplicate point at index {index}")]
    DuplicatePoint { index: usize },

    #[error("value {value} lies outside [-1, 1]")]
    OutOfDomain { value: String },

    #[error("no admissible pair of points")]
    EmptyDomain,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for failures of the input or output channel rather than of the mathematics.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
