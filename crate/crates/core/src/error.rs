use thiserror::Error;

use crate::series::Flavor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Laguerre order q = {0} is below the supported minimum of -1")]
    LaguerreOrder(i64),

    #[error("sequence has {got} terms, need at least {need}")]
    LengthMismatch { need: usize, got: usize },

    #[error("flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch { expected: Flavor, found: Flavor },

    #[error("series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("lambda = 0 has no composition form for this transform")]
    ZeroLambda,

    #[error("identity {id} requires parameter `{param}`")]
    MissingParameter {
        id: &'static str,
        param: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
