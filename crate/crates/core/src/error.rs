use thiserror::Error;

/// Errors raised by the algebra kernel and the cross cap constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable tables differ: {0}")]
    TableMismatch(String),

    #[error("no assignment for variable `{0}`")]
    MissingAssignment(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("leading coefficient of the divisor in `{0}` is not a nonzero constant")]
    NonUnitLeading(String),

    #[error("division is not exact")]
    InexactDivision,

    #[error("matrix entry ({row}, {col}) is not a constant")]
    NonConstantEntry { row: usize, col: usize },

    #[error("k = {0} is out of range: k must be at least 2")]
    InvalidK(i64),

    #[error("j = {j} is out of range: 1 <= j <= {max}")]
    IndexOutOfRange { j: i64, max: i64 },

    #[error("invalid family `{0}`")]
    InvalidFamily(String),

    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },

    #[error("vector field is zero")]
    ZeroField,

    #[error("vector field is not graded: {0}")]
    NotGraded(String),

    #[error("linear function has all coefficients zero")]
    ZeroLinearFunction,

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
