use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("enumeration of {count} squares exceeds bound {bound}")]
    SizeOverflow { count: u128, bound: u128 },
    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("prefix too short: need {required} letters, got {got}")]
    PrefixTooShort { required: usize, got: usize },
    #[error("argument must be positive")]
    NonPositive,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index out of window: {0}")]
    OutOfWindow(String),
    #[error("{states} states do not fit in {width} bits")]
    WidthOverflow { states: usize, width: u32 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid picture: {0}")]
    InvalidPicture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
