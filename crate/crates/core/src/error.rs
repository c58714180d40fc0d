use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("weight mismatch: expected {expected}, got {actual}")]
    WeightMismatch { expected: u32, actual: u32 },

    #[error("m must be nonzero")]
    ZeroM,

    #[error("mode {mode} is inconsistent with m = {m}")]
    ModeMismatch { mode: &'static str, m: i64 },

    #[error("degenerate inequality: every coefficient vanishes")]
    Degenerate,

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("empty constraint system")]
    EmptySystem,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
