use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge} references variable {index}, but the graph has {n} variables")]
    IndexOutOfRange { edge: usize, index: usize, n: usize },

    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },

    #[error("edge {edge} has arity {arity}; at most {max} variables per equation are supported")]
    ArityTooLarge {
        edge: usize,
        arity: usize,
        max: usize,
    },

    #[error("{what} exceeds the cap: needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: String,
    },

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("graph is not a forest: {0}")]
    NotAForest(String),

    #[error("infeasible shape: {0}")]
    InfeasibleShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, needed: impl ToString, cap: impl ToString) -> Self {
        Error::CapExceeded {
            what,
            needed: needed.to_string(),
            cap: cap.to_string(),
        }
    }
}
