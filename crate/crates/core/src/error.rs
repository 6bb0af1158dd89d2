use thiserror::Error;

use crate::polycore::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("curve is not reduced: the partials share a factor of degree {square_degree}")]
    NotReduced { square_degree: u32 },
    #[error("a curve needs degree at least 1")]
    ConstantCurve,
    #[error("unsupported classification: {0}")]
    Unsupported(String),
    #[error("line {line} is not a component of the curve")]
    NotAComponent { line: String },
    #[error("line {line} is already a component of the curve")]
    AlreadyAComponent { line: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::Internal`] when `cond` does not hold.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Internal(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
