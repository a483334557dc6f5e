use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit")]
    NotAUnit,
    #[error("order enumeration bound exceeded (p = {p}, bound = {bound})")]
    OrderBoundExceeded { p: u64, bound: u64 },
    #[error("root of unity of order {order} is not realizable in {field}")]
    UnrealizableRoot { order: u64, field: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedMatrix { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("kernel requires discrete units")]
    NonDiscreteTwist,
    #[error("invalid QCI spec: {0}")]
    InvalidSpec(String),
    #[error("oracle requires connected graded algebra")]
    NotConnected,
    #[error("radical computation unsupported for this algebra in characteristic {0}")]
    RadicalUnsupported(u64),
    #[error("dimension guard exceeded: {what} = {value} > {limit} (pass an override to proceed)")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("sequence too short: need at least {need} terms, got {got}")]
    SequenceTooShort { need: usize, got: usize },
    #[error("chain map lift failed: {0}")]
    LiftFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
