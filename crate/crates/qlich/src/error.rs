//! Error types shared across the engine.

use thiserror::Error;

/// Errors raised by the state algebra and operator layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("ambient dimension mismatch: expected at most {expected}, found index {found}")]
    DimensionMismatch { expected: u8, found: u8 },
    #[error("input is not homogeneous in weight and fermion number")]
    NotHomogeneous,
    #[error("tensor order must be at least {min}, found {found}")]
    OrderTooSmall { min: u8, found: u8 },
    #[error("operation requires an even tensor order, found {0}")]
    OddOrder(u8),
    #[error("operation is only defined in dimension {expected}, found {found}")]
    UnsupportedDimension { expected: u8, found: u8 },
    #[error("{0}")]
    Unsupported(String),
}

/// Parse errors carry a byte position into the offending text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}
