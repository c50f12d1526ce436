use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("integer overflow")]
    Overflow,
    #[error("branch divisor not 2-divisible: phi(e) != 0")]
    BranchNotEven,
    #[error("subset is not in the kernel of phi")]
    NotInKernel,
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceBound(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
