use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input would produce more members (or vertices, or nodes) than the
    /// configured guard allows.
    #[error("{what}: {requested} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    /// A value outside the domain an operation is defined on.
    #[error("{0}")]
    Domain(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub(crate) fn size_limit(what: &'static str, requested: u128, limit: u128) -> Self {
        Error::SizeLimit {
            what,
            requested,
            limit,
        }
    }

    /// Short machine-readable tag, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SizeLimit { .. } => "size_limit",
            Error::Domain(_) => "domain",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
