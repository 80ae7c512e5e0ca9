use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system {label}{rank}")]
    InvalidType { label: String, rank: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid pair spec: {0}")]
    InvalidSpec(String),

    #[error("prime {0} divides a denominator; retry with another prime")]
    BadPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a module character: {0}")]
    NotAModuleCharacter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("table data: {0}")]
    TableData(String),
}
