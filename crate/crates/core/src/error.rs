use thiserror::Error;

/// Errors surfaced by the workbench. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("resource limit exceeded: {what} (needed {needed}, budget {budget})")]
    Resource {
        what: String,
        needed: String,
        budget: String,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    pub fn resource(what: impl Into<String>, needed: impl ToString, budget: impl ToString) -> Self {
        Error::Resource {
            what: what.into(),
            needed: needed.to_string(),
            budget: budget.to_string(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Syntax { .. } | Error::UnboundVariable(_) => 2,
            Error::Resource { .. } => 3,
            Error::Inconsistency(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
