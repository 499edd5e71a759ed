use thiserror::Error;

/// Errors raised by the library.
///
/// Search failures (a goal that could not be proven) are not errors; they are
/// reported through [`crate::Outcome::NotFound`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,
    #[error("exponent vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("empty polynomial system")]
    EmptySystem,
    #[error("non-integer coefficient in {0}")]
    NonIntegral(String),
    #[error("unsupported goal: {0}")]
    UnsupportedGoal(String),
    #[error("unsupported certificate version `{0}`")]
    VersionMismatch(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
