use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("degenerate hull: all nodes are collinear")]
    DegenerateHull,

    #[error("unsupported arc: {0}")]
    UnsupportedArc(String),

    /// A postcondition the constructions guarantee has failed; this points at
    /// a bug or at input that slipped past validation.
    #[error("structural violation: {0}")]
    Structural(String),

    #[error("enumeration too large: n = {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("arc generation failed: {0}")]
    Generation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure_structural {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Structural(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_structural;
