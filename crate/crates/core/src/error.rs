use thiserror::Error;

use crate::sqg::Diagnostics;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no sign change found while bracketing zero {k} of J_{order}")]
    ZeroBracket { order: u32, k: usize },

    #[error("zero refinement for J_{order} did not converge (zero {k})")]
    ZeroConvergence { order: u32, k: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("time step {dt} violates the advective guard (limit {limit})")]
    Cfl { dt: f64, limit: f64 },

    #[error("run aborted at t = {t}: {reason}")]
    Aborted { t: f64, reason: String, partial: Box<Diagnostics> },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
