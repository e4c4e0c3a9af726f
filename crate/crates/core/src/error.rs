use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition of an operation was violated.
    #[error("{0}")]
    Precondition(String),
    /// The request is well formed but larger than a configured search limit.
    #[error("{what} = {got} exceeds the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("invalid graph6 string: {0}")]
    Graph6(String),
    #[error("invalid hypergraph: {0}")]
    Hypergraph(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
