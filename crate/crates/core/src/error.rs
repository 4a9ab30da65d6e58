use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and algebra layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("double validation failure: {0}")]
    DoubleValidationFailure(String),

    #[error("not quasi-triangular: {0}")]
    NotQuasiTriangular(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("integral space has dimension {0}, expected 1")]
    IntegralDimensionAnomaly(usize),

    #[error("cointegral space has dimension {0}, expected 1")]
    CointegralDimensionAnomaly(usize),

    #[error("normalization impossible: {0}")]
    NormalizationImpossible(String),

    #[error("pair is not normalized: {0}")]
    NotNormalized(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("cocycle identity fails: {0}")]
    CocycleInvalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
