use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of an operation (bad rank, a root of
    /// the Levi factor, labels of different ranks, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    /// A machine check disagreed with the statement it was checking.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Two independent routes to the same answer disagreed; always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn check_rank(n: u32) -> Result<()> {
    if n < 2 {
        return Err(domain(format!("rank n must be at least 2, got {n}")));
    }
    Ok(())
}
