use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not available for this input (family, dimension, provenance).
    #[error("unsupported: {0}")]
    Capability(String),

    /// Adaptive refinement stopped before reaching the requested tolerance.
    #[error("accuracy target {target:e} not reached (achieved {achieved:e})")]
    Accuracy { achieved: f64, target: f64 },

    /// The hypothesis of a check failed on its own grid.
    #[error("premise violated: {0}")]
    Premise(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
