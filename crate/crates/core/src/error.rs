use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {0} has odd degree")]
    OddDegree(usize),

    #[error("n = {n} exceeds the exhaustive enumeration cap of {cap}; use sampled mode")]
    EnumerationCap { n: usize, cap: usize },

    #[error("n·r = {n}·{r} is odd")]
    OddPointCount { n: usize, r: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: gave up after {attempts} attempts")]
    AttemptsExhausted { what: String, attempts: usize },

    #[error("malformed vertex subset: {0}")]
    MalformedSubset(String),

    #[error("invalid edge split: {0}")]
    InvalidSplit(String),

    #[error("vertex split condition {condition} violated: {detail}")]
    SplitCondition { condition: u8, detail: String },

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("certificate: {0}")]
    Certificate(String),

    #[error("instance too large for exact verification: {0}")]
    GuardExceeded(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
