use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan data: {0}")]
    CartanData(String),
    #[error("not a Cartan matrix of finite type: {0}")]
    NotFiniteType(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("root indexing anchor broken: {0}")]
    Anchor(String),
    #[error("torus claim failed: {0}")]
    TorusClaim(String),
    #[error("element store budget exceeded ({0} elements); use on-the-fly orbit mode")]
    StoreBudget(usize),
    #[error("character table inconsistency: {0}")]
    TableInconsistency(String),
    #[error("class fusion failed: {0}")]
    Fusion(String),
    #[error("unsupported family: {0}")]
    Family(String),
    #[error("invalid model parameters: {0}")]
    ModelParams(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
