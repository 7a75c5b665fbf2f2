use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("generator `{0}` is not homogeneous")]
    NonHomogeneous(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("generator `{0}` is a unit")]
    UnitGenerator(String),
    #[error("polynomials belong to different ambient rings")]
    RingMismatch,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("`{0}` is zero or a unit")]
    ZeroOrUnit(String),
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("the ring is not artinian")]
    NotArtinian,
    #[error("index {index} is outside the stored range 0..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("element {0} is not a cycle")]
    NotACycle(String),
    #[error("generating set is not minimal: {0}")]
    NotMinimal(String),
    #[error("internal degree bound {bound} is too small: {detail}")]
    DegreeBoundTooSmall { bound: i64, detail: String },
    #[error("negative deviation encountered at n = {0}")]
    NegativeDeviation(usize),
    #[error("hypothesis not satisfied: {0}")]
    NotApplicable(String),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
