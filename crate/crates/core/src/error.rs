use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid control schedule: {0}")]
    InvalidSchedule(String),

    #[error("numerical blow-up: non-finite state at node {node} (t = {time})")]
    NumericalBlowup { node: usize, time: f64 },

    #[error("trapezoid rule needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("degenerate objective range in component {component}: ideal = nadir = {value}")]
    DegenerateRange { component: usize, value: f64 },

    #[error("invalid solver input: {0}")]
    InvalidSolverInput(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
