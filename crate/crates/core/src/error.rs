use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("edge {{{u},{v}}} is absent")]
    EdgeAbsent { u: usize, v: usize },

    #[error("loops are not allowed ({0} = {0})")]
    Loop(usize),

    #[error("edges {{{x},{y}}} and {{{y},{z}}} cannot be lifted: {reason}")]
    InvalidLift {
        x: usize,
        y: usize,
        z: usize,
        reason: &'static str,
    },

    #[error("budget exceeded: {what} is {actual}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("time budget exhausted during {0}")]
    Timeout(&'static str),

    #[error("invalid index {index} for {what} (smallest valid index is {min})")]
    InvalidIndex {
        what: String,
        index: usize,
        min: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("predicate `{predicate}` is not closed: a reduction of a member is not a member")]
    NotClosed {
        predicate: String,
        member: String,
        reduction: String,
    },

    #[error("no witness found: {0}")]
    NotFound(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, actual: usize, limit: usize) -> Self {
        Error::BudgetExceeded {
            what,
            actual,
            limit,
        }
    }
}
