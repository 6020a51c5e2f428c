use thiserror::Error;

/// Errors produced by the exact-arithmetic, series, and walk layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-power-series quotient")]
    NonPowerSeriesQuotient,
    #[error("denominator is not a monomial times a unit power series")]
    NonUnitDenominator,
    #[error("series square root requires constant term 1")]
    SqrtConstantTerm,
    #[error("initial qubit state must have unit norm")]
    NonUnitState,
    #[error("normalization undefined: total weight is zero")]
    ZeroTotalWeight,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse {0:?} as an exact scalar")]
    ParseScalar(String),
}
