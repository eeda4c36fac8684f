use thiserror::Error;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("polynomial contains negative powers of q^x; the x -> infinity limit diverges")]
    NegativePowers,

    #[error("lower q-Pochhammer factor vanishes at term {0} before the series terminates")]
    ZeroDenominator(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("Casoratian vanishes identically")]
    DegenerateCasoratian,

    #[error("non-exact division: {0}")]
    InexactDivision(String),

    #[error("denominator polynomial vanishes at integer x = {0}")]
    DenominatorZeroAtInteger(i64),

    #[error("tail ratio could not be certified below 1 within {0} terms")]
    NonConvergence(usize),

    #[error("root finding failed: {0}")]
    RootFindingFailure(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
}

impl Error {
    /// True for failures that signal a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::DegenerateCasoratian | Error::InexactDivision(_) | Error::RootFindingFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
