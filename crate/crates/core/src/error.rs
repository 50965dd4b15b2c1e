use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} points, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("colour mismatch at position {index}: expected {expected}, found {found}")]
    TypeMismatch {
        index: usize,
        expected: String,
        found: String,
    },

    #[error("palette error: {0}")]
    Palette(String),

    #[error("map is not equivariant at colour {0}")]
    NotEquivariant(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("at {pos}: {msg}")]
    At { pos: usize, msg: String },

    #[error("size {size} exceeds budget {budget}")]
    Budget { size: usize, budget: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("grade mismatch in block {block}: expected {expected}, found {found}")]
    GradeMismatch {
        block: usize,
        expected: String,
        found: String,
    },

    #[error("oracle file: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
