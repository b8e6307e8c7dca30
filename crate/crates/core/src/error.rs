use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not representable in Q(i): {0}")]
    NotRepresentable(String),
    #[error("bad polynomial: {0}")]
    BadPolynomial(String),
    #[error("span is not a subalgebra: {0}")]
    NotASubalgebra(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("depth exceeded: result needs depth {needed}, module was built to depth {depth}")]
    DepthExceeded { depth: u32, needed: u32 },
    #[error("wrong algebra: {0}")]
    WrongAlgebra(String),
    #[error("element is not in the polynomial subalgebra: {0}")]
    NotInSubalgebra(String),
    #[error("not a weight module: {0}")]
    NotWeightModule(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
