use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: denominator vanishes at z = {0}")]
    Pole(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("indicial polynomial vanishes identically; operator is degenerate for every s")]
    DegenerateEverywhere,
    #[error("operator is degenerate at s = {0}")]
    Degenerate(u64),
    #[error("elimination failed at power {0}: reducer leading coefficient vanishes")]
    EliminationFailure(usize),
    #[error("operator has no degree (all b_l vanish)")]
    NoDegree,
    #[error("expected an integer: {0}")]
    NotIntegral(String),
    #[error("malformed range `{0}`")]
    BadRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
