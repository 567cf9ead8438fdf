use thiserror::Error;

/// Failure modes surfaced by the lattice, evolution, and experiment layers.
///
/// Theorem checkers never use these to signal a falsified inequality; a
/// violated bound is data and lands in a report, not in an `Err`.
#[derive(Debug, Error)]
pub enum DiracError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("undefined state: {0}")]
    UndefinedState(String),
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("apex not bracketed: {0}")]
    ApexNotBracketed(String),
    #[error("empty cut: {0}")]
    EmptyCut(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, DiracError>;
