use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("graph has non-unit edge weights")]
    NonUnitWeights,
    #[error("host graph is not a tree")]
    NotATree,
    #[error("embedding contracts vertices {0} and {1}")]
    NotNonContracting(usize, usize),
    #[error("instance too large: {size} vertices exceeds cap {cap}")]
    InstanceTooLarge { size: usize, cap: usize },
    #[error("distortion must be at least 2, got {0}")]
    DistortionBelowTwo(String),
    #[error("not a proper 3-coloring: {0}")]
    NotAProperColoring(String),
    #[error("state budget of {0} exceeded")]
    ResourceBudgetExceeded(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
