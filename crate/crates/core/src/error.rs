use thiserror::Error;

/// Errors raised by graph constructions and lemma checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller supplied an out-of-range id or a parameter outside its domain.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Input violates a structural invariant (e.g. a "matching" sharing a vertex).
    #[error("malformed structure: {0}")]
    Structure(String),
    /// A construction precondition failed for a specific vertex/demand.
    #[error("construction failed: {0}")]
    Construction(String),
    /// An exhaustive search would exceed its configured budget.
    #[error("budget exceeded while {what}: needs more than {bound}")]
    Budget { what: String, bound: u64 },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn arg(message: impl Into<String>) -> Self {
        Error::Argument(message.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
