use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exhaustive enumeration was asked for a space larger than the guard allows.
    #[error("refusing to enumerate {space} strings of length {len} over {k} letters (limit {limit}); pass --force to override")]
    SizeGuard {
        k: usize,
        len: usize,
        space: String,
        limit: u128,
    },

    #[error("letter {letter} is outside the alphabet 1..={k}")]
    LetterOutOfRange { letter: u32, k: usize },

    #[error("composition parts sum to {actual}, expected {expected}")]
    PartSumMismatch { expected: usize, actual: usize },

    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("quadrature did not converge within {budget} function evaluations")]
    QuadratureBudget { budget: usize },

    #[error("method {method} does not apply to k = {k}")]
    MethodNotApplicable { method: &'static str, k: usize },

    #[error("f_{k}({n}) disagrees: {first} gives {first_value}, {second} gives {second_value}")]
    VerificationMismatch {
        k: usize,
        n: usize,
        first: &'static str,
        first_value: String,
        second: &'static str,
        second_value: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
