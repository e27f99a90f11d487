use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid chart: {0}")]
    Chart(String),
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("repeated index {0} in component")]
    RepeatedIndex(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("structure is degenerate: {0}")]
    Degenerate(String),
    #[error("missing input: {0}")]
    Missing(&'static str),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
}
