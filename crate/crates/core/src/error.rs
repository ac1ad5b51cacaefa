use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("size mismatch: expected n = {expected}, got n = {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A computed quantity violated an identity that holds for every correct input,
    /// e.g. a non-integral eigenvalue. Indicates a bug upstream (usually in characters).
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("character cache rejected: {0}")]
    CacheValidation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SpectraError>;
