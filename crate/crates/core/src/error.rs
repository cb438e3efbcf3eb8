use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The input lies outside the hypotheses under which a closed formula holds.
    #[error("out of hypothesis: {0}")]
    OutOfHypothesis(String),

    /// No host graph satisfies the forbidden-subgraph constraint.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("budget exceeded: {what} needs {required}, budget is {budget}")]
    Budget {
        what: String,
        required: usize,
        budget: usize,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
