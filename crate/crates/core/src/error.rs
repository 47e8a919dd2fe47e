use thiserror::Error;

/// Errors raised anywhere in the engine. The CLI maps each variant to its
/// own exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {what} (cap {cap})")]
    ResourceExceeded { what: String, cap: usize },

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("non-integral value where an algebraic integer was expected: {0}")]
    NonIntegral(String),

    #[error("orthogonality failure: {0}")]
    Orthogonality(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("corpus integrity error in entry `{entry}`: {message}")]
    CorpusIntegrity { entry: String, message: String },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
