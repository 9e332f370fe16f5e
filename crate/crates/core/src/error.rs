use thiserror::Error;

use crate::subset::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input (wrong cardinality, bad file, bad flag).
    #[error("invalid input: {0}")]
    Input(String),

    /// A sign map violates the packet condition.
    #[error("not a signotope: {} violating packet(s), first {}", .violations.len(), .violations[0])]
    NotSignotope { violations: Vec<Subset> },

    /// `|I ∩ J| + r` is even, where no constructive extension is known.
    #[error("unsupported parity: |I ∩ J| + r = {0} is even")]
    UnsupportedParity(usize),

    /// A state that valid inputs can never reach.
    #[error("internal error: {0}")]
    Internal(String),

    /// A solver answered something that does not check out.
    #[error("solver protocol error: {0}")]
    Protocol(String),

    /// A feasibility guard refused the job.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
