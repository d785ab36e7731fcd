use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{0} is undefined on the empty permutation")]
    EmptyPermutation(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid zigzag: {0}")]
    InvalidZigzag(String),

    #[error("value set must be non-empty")]
    EmptyValueSet,

    #[error("value {value} is not in 1..={n}")]
    ValueOutOfRange { value: u32, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("n = {n} is outside the supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },

    #[error("arithmetic check failed: {0}")]
    Arithmetic(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
