use thiserror::Error;

/// Errors raised by graph construction, metric queries and the witness
/// machinery.
///
/// The variants map onto the CLI exit codes: input-shaped problems are
/// `2`, certification problems `3`, consistency failures `4`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("embedding error: {0}")]
    Embedding(String),

    #[error("certification error: {0}")]
    Certification(String),

    /// A construction that must succeed did not produce its result.
    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("edge set belongs to a different host graph")]
    HostMismatch,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn certification(msg: impl Into<String>) -> Self {
        Error::Certification(msg.into())
    }
}
