use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("word {word} has length {found}, expected {expected}")]
    LengthMismatch {
        word: usize,
        expected: usize,
        found: usize,
    },
    #[error("letter {letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("language has no words")]
    EmptyLanguage,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bound exceeded: {what} = {value} > {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("operation requires a binary alphabet, found size {0}")]
    NotBinary(usize),
    #[error("language is not {0}")]
    NotClosed(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
