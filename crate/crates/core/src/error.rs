use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("power undefined: zero raised to a nonpositive exponent")]
    UndefinedPower,
    #[error("exponent {exponent} lies outside the exact region of window {bound}")]
    WindowViolation { exponent: String, bound: String },
    #[error("duplicate exponent {0}")]
    DuplicateExponent(String),
    #[error("coefficient of x^({exponent}) is beyond the precision of window {bound}")]
    PrecisionExceeded { exponent: String, bound: String },
    #[error("orientation mismatch")]
    OrientationMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent monoid has no additive inverse for degree {0}")]
    NoExponentInverse(String),
    #[error("argument of the zero series is undefined")]
    UndefinedArgument,
    #[error("composition requires an inner series of positive degree")]
    NonPositiveDegree,
    #[error("leading coefficient must be a positive real number")]
    NonPositiveLeading,
    #[error("expected a series of degree one")]
    NotDeltaSeries,
    #[error("quotient is not a constant series")]
    NotConstant,
    #[error("partition of length {len} needs more than {nvars} variables")]
    TooFewVariables { len: usize, nvars: usize },
    #[error("variable counts differ ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("unsupported variable count {0}; nested expansion supports 1 to 4")]
    UnsupportedVariableCount(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("series is not in the integer power-sum span: {0}")]
    UnsupportedBasis(String),
    #[error("pseudointeger bounds differ ({0} vs {1})")]
    BoundMismatch(u64, u64),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
