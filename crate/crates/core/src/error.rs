use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown operation token `{0}`")]
    UnknownOperation(String),

    #[error("instance has neither source nor target sentences")]
    EmptyInstance,

    #[error("instance `{0}` has neither source nor target sentences")]
    EmptyInstanceId(String),

    #[error("invalid instance `{id}`: {message}")]
    InvalidInstance { id: String, message: String },

    #[error("invalid parse for sentence `{sentence}`: {message}")]
    InvalidParse { sentence: String, message: String },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("duplicate id `{0}`")]
    DuplicateId(String),

    #[error("instance `{0}` is a complete deletion or addition")]
    Degenerate(String),

    #[error("malformed annotation: {0}")]
    Annotation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: {what} ({left} vs {right})")]
    LengthMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("no nonzero differences")]
    NoNonzeroDifferences,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
