use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid vector: {0}")]
    InvalidVector(String),
    #[error("incomplete space spec: {0}")]
    IncompleteSpec(String),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("scope too small: {0}")]
    ScopeTooSmall(String),
    #[error("line minimization failed to converge")]
    ConvergenceFailure,
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("instance family generated no configurations")]
    EmptyFamily,
    #[error("sets must be disjoint: {0}")]
    DisjointnessViolated(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
