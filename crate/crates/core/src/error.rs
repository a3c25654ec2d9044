use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A coefficient rule or table does not reach the requested index.
    #[error("range exhausted: {what} needs index {needed}, data stops at {available}")]
    Range {
        what: String,
        needed: usize,
        available: String,
    },

    #[error("invalid monic polynomial sequence: {0}")]
    InvalidMps(String),

    #[error("regularity violated: {0}")]
    Regularity(String),

    /// A parameter tuple sits on a hyperplane the construction excludes.
    #[error("degenerate parameters: {constraint} must be nonzero")]
    Degenerate { constraint: String },

    /// Parameters belong to a different case than the one requested.
    #[error("case dispatch failed: {predicate}")]
    Dispatch { predicate: String },

    #[error("sequence has no constant degree offset: {0}")]
    NotNormalizable(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn range(what: impl Into<String>, needed: usize, available: impl ToString) -> Self {
        Error::Range {
            what: what.into(),
            needed,
            available: available.to_string(),
        }
    }

    pub(crate) fn degenerate(constraint: impl Into<String>) -> Self {
        Error::Degenerate {
            constraint: constraint.into(),
        }
    }
}
