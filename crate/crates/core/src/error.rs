use thiserror::Error;

/// Failures raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational literal `{0}`")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("pole: {kernel}({args}) has a vanishing denominator")]
    Pole { kernel: &'static str, args: String },
    #[error("pole of order greater than one at {0}")]
    PoleOrder(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pole(kernel: &'static str, args: String) -> Error {
    Error::Pole { kernel, args }
}
