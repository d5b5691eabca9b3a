use thiserror::Error;

/// Errors surfaced by the library. Soft conditions (budget exhaustion inside
/// orbit enumeration, inconclusive decisions) are encoded in return values,
/// not here.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomial has no real root greater than 1")]
    NoRootAboveOne,
    #[error("operands belong to different bases")]
    BaseMismatch,
    #[error("value lies outside [l_beta, l_beta + 1)")]
    OutOfDomain,
    #[error("step budget of {0} exceeded")]
    StepBudgetExceeded(usize),
    #[error("state cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("division by an element that is zero at the base root")]
    DivisionByZero,
    #[error("not an irreducible cubic: {0}")]
    NotCubic(String),
    #[error("witness pair failed verification: {0}")]
    WitnessMismatch(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("extra polynomial does not vanish at the base root")]
    ExtraPolyNotVanishing,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
