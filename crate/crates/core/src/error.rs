use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    InvalidPolygon(usize),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource cap exceeded: {what} is {value}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("argument {x} is outside the domain x >= -1/e of the principal Lambert W branch")]
    Domain { x: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
