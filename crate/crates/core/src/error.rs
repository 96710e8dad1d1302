use crate::tree::Vertex;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree sequence entries must be >= 2 (got {0})")]
    InvalidDegree(u32),
    #[error("degree sequence period must be non-empty")]
    EmptyPeriod,
    #[error("vertex {vertex} is not valid for this tree: {reason}")]
    InvalidVertex { vertex: Vertex, reason: String },
    #[error("words belong to different groups")]
    MixedGroups,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{name}`: expected {expected} sections, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("recursive generators require a constant degree sequence")]
    NonConstantRecursive,
    #[error("element is not in St({0})")]
    NotInStabilizer(usize),
    #[error("declared order {declared} of `{name}` failed verification: {reason}")]
    BadDeclaredOrder {
        name: String,
        declared: u64,
        reason: String,
    },
    #[error("enumeration exceeded cap of {cap} (got at least {seen})")]
    CapExceeded { cap: usize, seen: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
