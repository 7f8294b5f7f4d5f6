use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside its domain (empty foundation set,
    /// non-idempotent cover member, non-composable germs, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// An element does not belong to the instance it was handed to.
    #[error("element {element} does not belong to {instance}")]
    ForeignElement { element: String, instance: String },

    /// A self-similar specification violates one of the Zappa-Szép axioms
    /// or the letter-bijection requirement.
    #[error("construction error: {axiom} fails for {inputs}")]
    Construction { axiom: String, inputs: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The instance's principal right ideals are not a tree, so boundary
    /// and germ operations are unavailable.
    #[error("instance {0} is not tree-like: boundary operations are unavailable")]
    NotTree(String),

    /// An internal consistency check failed (e.g. a hull product disagreed
    /// with the right-LCM prediction). Always a bug or a corrupt instance.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }

    pub fn construction(axiom: impl Into<String>, inputs: impl Into<String>) -> Self {
        Error::Construction {
            axiom: axiom.into(),
            inputs: inputs.into(),
        }
    }
}
