use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("vertex with a single child at byte {pos}")]
    SingleChild { pos: usize },
    #[error("leaf labels must be exactly 0..{n} without repeats: {msg}")]
    Labels { n: usize, msg: String },
    #[error("trees have different leaf counts ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("matching is not a bijection: {0}")]
    NotBijection(String),
    #[error("malformed tanglegram file, line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("unknown leaf label {0}")]
    UnknownLeaf(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} is not an internal vertex")]
    NotInternal(usize),
    #[error("orientation has {got} bits, tree has {expected} internal vertices")]
    OrientationLength { expected: usize, got: usize },
    #[error("switch vector is incomplete: {0}")]
    IncompleteSwitch(String),
    #[error("{what} = {got} exceeds the supported limit {limit}")]
    SizeLimit { what: &'static str, got: usize, limit: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
