use thiserror::Error;

/// Errors shared by every operation in this crate.
///
/// The split matters to callers: `Syntax`, `Precondition`, `Overflow` and
/// `CertificateViolation` are domain errors (the input or the recorded
/// invariant is at fault), while `Resource` means a configurable guard
/// tripped before the computation finished.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("precondition violation: {0}")]
    Precondition(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("resource guard tripped: {0}")]
    Resource(String),

    #[error("certificate violation: {0}")]
    CertificateViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
