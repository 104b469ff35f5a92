use thiserror::Error;

/// Errors raised by the library. The CLI exits with 1 on `Parse`, 3 on
/// `Mismatch`, `Residual` and `Integrality`, and 2 otherwise.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field: {0}")]
    Field(String),
    #[error("invalid gamma triple: {0}")]
    Triple(String),
    #[error("invalid hypergeometric parameters: {0}")]
    Params(String),
    #[error("linear algebra: {0}")]
    Linalg(String),
    #[error("precondition failed: {0}")]
    Domain(String),
    #[error("enumeration needs {needed} operations, budget is {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("non-integral stratum count: {0}")]
    Integrality(String),
    #[error("formula mismatch: {0}")]
    Mismatch(String),
    #[error("formula value {re} + {im}i is {residual:.3e} away from an integer")]
    Residual { re: f64, im: f64, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
