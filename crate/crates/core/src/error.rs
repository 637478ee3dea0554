use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("group mismatch: operands belong to different groups")]
    GroupMismatch,

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("group element {0} does not belong to this group")]
    BadElement(String),

    #[error("operation requires a finite group, got {0}")]
    InfiniteGroup(String),

    #[error("invalid leg {0}: free product legs are 1 and 2")]
    BadLeg(u8),

    #[error("alphabet mismatch: operands belong to different alphabets")]
    AlphabetMismatch,

    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),

    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    #[error("tensor rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("no image provided for generator {0}")]
    MissingImage(String),

    #[error("presentation {0} has no Hopf data")]
    MissingHopfData(String),

    #[error("parse error at line {line}: {msg}")]
    ParseLine { line: usize, msg: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("expected a non-negative integer multiplicity, got {0}")]
    NotAMultiplicity(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
