use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graph is disconnected: vertex {to} is unreachable from vertex {from}")]
    Disconnected { from: usize, to: usize },

    #[error("rational with zero denominator")]
    ZeroDenominator,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("the system Dw = n1 is inconsistent")]
    Inconsistent,

    #[error("curvature vector has zero l1 norm")]
    ZeroNorm,

    #[error("numerically singular: pivot {pivot:e} at step {step} is below {threshold:e}")]
    NumericallySingular { step: usize, pivot: f64, threshold: f64 },

    #[error("random graph not connected after {retries} retries")]
    GenerationFailed { retries: u32 },

    /// A check that the mathematics guarantees has failed. This indicates a
    /// bug in this crate, never a property of the input.
    #[error("verification failure: {0}")]
    Falsified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
