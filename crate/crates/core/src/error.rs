use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine reports. Display strings are part of the CLI
/// contract and are matched by scripts, so keep them stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Document(String),
    #[error("duplicate vertex: {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge: ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("malformed edge: {0}")]
    MalformedEdge(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("sweep too large: {0}")]
    SweepTooLarge(String),
    #[error("graph too large: {0}")]
    GraphTooLarge(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("ground mismatch")]
    GroundMismatch,
    #[error("ground set too large: {0} elements (cap {1})")]
    GroundTooLarge(usize, usize),
    #[error("general box too large: {0} elements (cap {1})")]
    GeneralBoxTooLarge(usize, usize),
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    #[error("invalid condition: V+ and V- overlap")]
    InvalidCondition,
    #[error("empty conditioned space")]
    EmptyConditionedSpace,
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("invalid cell: {0}")]
    InvalidCell(String),
    #[error("event not increasing")]
    NotIncreasing,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("exhaustive cap exceeded: universe {0} > {1}")]
    ExhaustiveCapExceeded(usize, usize),
    /// A structural identity that must hold by construction did not.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
