use thiserror::Error;

/// Errors raised by the algebra and combinatorics in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation {0:?}: expected each of 1..n exactly once")]
    InvalidPermutation(Vec<usize>),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("ambient mismatch: ({0}, {1}) vs ({2}, {3})")]
    AmbientMismatch(usize, usize, usize, usize),

    #[error("operation requires a polynomial without y variables")]
    YVariablesPresent,

    #[error("degree {degree} of x{var} exceeds cap {cap}")]
    DegreeExceedsCap { var: usize, degree: u32, cap: u32 },

    #[error("the zero polynomial has no lowest degree part")]
    ZeroPolynomial,

    #[error("diagram is not %-avoiding")]
    NotPercentAvoiding,

    #[error("diagram columns are not ordered by inclusion")]
    NotInclusionOrdered,

    #[error("orthodontia stalled: column {column} has no missing tooth")]
    OrthodontiaStalled { column: usize },

    #[error("{what} is too large for brute force (n = {n}, limit {limit})")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("lascoux expansion exceeded {cap} iterations; triangularity premise violated at {monomial:?}")]
    ExpansionDiverged { cap: usize, monomial: Vec<u32> },

    #[error("stable limit did not settle by N = {0}")]
    NoStabilization(usize),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Text-format parse failure with the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position} in {input:?}: {message}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(index: usize, max: usize) -> Result<()> {
    if index == 0 || index > max {
        Err(Error::IndexOutOfRange { index, max })
    } else {
        Ok(())
    }
}
