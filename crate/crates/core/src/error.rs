use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HcfError {
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicands {0} and {1}")]
    IncompatibleRadicands(String, String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("region error: {0}")]
    Region(String),
    #[error("pattern not applicable: {0}")]
    NotApplicable(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HcfError>;
