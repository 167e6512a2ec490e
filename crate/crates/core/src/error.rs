use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("denominator vanishes under the substitution")]
    PoleAtSpecialization,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("degree {0} exceeds the configured cap {1}")]
    DegreeCapExceeded(usize, usize),
    #[error("unsupported alphabet leaf: {0}")]
    UnsupportedLeaf(String),
    #[error("series has a nonzero constant term")]
    ConstantTermPresent,
    #[error("series constant term must be 1")]
    BadConstantTerm,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("coefficient is not a Laurent polynomial: {0}")]
    IntegralityFailure(String),
    #[error("negative dimension {0}")]
    NegativeDimension(i64),
    #[error("insufficient precision (need more than {0})")]
    InsufficientPrecision(usize),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("input too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
