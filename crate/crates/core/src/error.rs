use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{op}: argument must be a positive integer, got 0")]
    ZeroArgument { op: &'static str },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what}: index {index} outside 1..={limit}")]
    OutOfRange {
        what: &'static str,
        index: u64,
        limit: u64,
    },

    #[error("{what}: {numerator} is not divisible by {divisor}")]
    InexactDivision {
        what: &'static str,
        numerator: String,
        divisor: String,
    },

    #[error("{what}: negative count {value} at n = {n}")]
    NegativeCount {
        what: &'static str,
        n: u64,
        value: String,
    },

    #[error("zeta coefficient c_{degree} is not a non-negative integer")]
    BadZetaCoefficient { degree: usize },

    #[error("z = 1/2 is a pole of the zeta function")]
    Pole,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
