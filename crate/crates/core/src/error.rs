use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("order {order} exceeds the supported limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("singular map: {0}")]
    SingularMap(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("aliasing: {0}")]
    Aliasing(String),
    #[error("polynomial degree {0} exceeds the guard")]
    DegreeGuard(u32),
    #[error("convention mismatch: {0}")]
    Convention(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
