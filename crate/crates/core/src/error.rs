use thiserror::Error;

/// Errors raised on malformed input or violated preconditions.
///
/// Unsatisfiable searches and failed theorem claims are ordinary results,
/// never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertices `{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),
    #[error("edge `{0}`--`{1}` already present")]
    DuplicateEdge(String, String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no table construction for {0}")]
    NotRealizable(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}
