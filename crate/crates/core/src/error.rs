use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not a unit (mu = {mu}, lambda = {lambda})")]
    NonUnit { mu: u32, lambda: u32 },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("evaluation at a pole")]
    Pole,
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("not a cusp: [{x}; {y}] mod {modulus}")]
    NotACusp { x: i64, y: i64, modulus: u64 },
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
