use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("ambient variable contexts differ: {0} vs {1}")]
    ContextMismatch(crate::laurent::VarContext, crate::laurent::VarContext),

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("substitution target involves the substituted variable")]
    SelfReferentialSubstitution,

    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
