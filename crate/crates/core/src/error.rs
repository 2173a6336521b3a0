use thiserror::Error;

/// Errors raised by the algebra kernels and the elimination pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0}: zero input")]
    ZeroInput(&'static str),
    #[error("{0}: constant input")]
    ConstantInput(&'static str),
    #[error("element is not a unit in the quotient ring")]
    NotAUnit,
    #[error("division is not exact")]
    InexactDivision,
    #[error("term is not reducible: {0}")]
    NotReducible(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no generators left after filtering")]
    EmptyInput,
    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),
    #[error("inconsistent pipeline data: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
