use thiserror::Error;

#[derive(Debug, Error)]
pub enum PslError {
    #[error("elements belong to incompatible models: {0}")]
    ModelMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Equality in the requested model is not decided by a confluent system.
    #[error("undecidable equality: {0}")]
    Undecidable(String),

    /// A computed value contradicts a published claim being checked.
    #[error("contradiction with published claim: {0}")]
    Contradiction(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, PslError>;
