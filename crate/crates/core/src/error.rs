use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("empty vertex set")]
    EmptySet,
    #[error("value {0} outside [0, 1]")]
    ValueOutOfRange(f64),
    #[error("coordinate {0} outside [0, 1]")]
    CoordinateOutOfRange(f64),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(message: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(message.into()))
}
