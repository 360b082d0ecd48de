use thiserror::Error;

/// Library-wide error type.
///
/// `Capability` is reserved for requests that are well-formed but exceed a
/// configured budget (vertex cap, time budget, bit-size budget, level cap).
/// Callers can rely on the invariant that a budget overrun never produces a
/// wrong answer, only this error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Usage(String),

    #[error("exceeds configured budget: {0}")]
    Capability(String),

    #[error("level {n} is outside the validity range {range} of {source_name}")]
    Range {
        n: u32,
        range: &'static str,
        source_name: &'static str,
    },

    #[error("no closed form is available for {0}")]
    NoClosedForm(&'static str),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }
}
