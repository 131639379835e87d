use alloc::string::String;

use thiserror::Error;

/// A text-format error with the byte offset where parsing failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WgError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} out of range for {context}")]
    IndexOutOfRange { index: usize, context: &'static str },
    #[error("{what} = {value} exceeds the hard cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("singular linear system ({context})")]
    Singular { context: &'static str },
    #[error("evaluation point is a pole: {0}")]
    Pole(String),
    #[error("series tail is not geometric at this N: {0}")]
    TailNotGeometric(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
