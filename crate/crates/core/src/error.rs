use thiserror::Error;

/// Errors raised by input validation, numeric kernels and I/O plumbing.
///
/// Infeasibility is not an error: solvers report it through
/// [`Status::Infeasible`](crate::Status).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("lambert w0 domain error: z = {0} is below -1/e")]
    LambertDomain(f64),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
