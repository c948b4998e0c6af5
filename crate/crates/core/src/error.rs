use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("entry {value} at ({row}, {col}) is not in {{-1, 0, 1}}")]
    InvalidEntry { row: usize, col: usize, value: i64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("seed does not satisfy the sum-of-squares condition: {0}")]
    NotAWeighingSeed(String),

    #[error("first seed row is not a skew circulant seed: {0}")]
    SeedNotSkew(String),

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    #[error("input is not certified: {0}")]
    UncertifiedInput(String),

    #[error("missing base data: {0}")]
    MissingBaseData(String),

    #[error("invalid search problem: {0}")]
    InvalidProblem(String),

    #[error("checkpoint does not belong to this problem (expected {expected}, found {found})")]
    StaleCheckpoint { expected: String, found: String },

    #[error("malformed checkpoint: {0}")]
    BadCheckpoint(String),

    #[error("Hadamard matrix is not normalized: {0}")]
    NotNormalized(String),

    #[error("eigenvalue outside Q[sqrt(-{radicand})]: {detail}")]
    UnexpectedSpectrum { radicand: u64, detail: String },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
