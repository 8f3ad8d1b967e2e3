use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("not finite dimensional: {0}")]
    NotFiniteDimensional(String),
}

pub type Result<T> = std::result::Result<T, Error>;
