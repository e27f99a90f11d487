//! Exact symbolic scalars: a parsed expression tree and its canonical
//! rational-function form.

mod gcd;
mod parse;
mod poly;
mod scalar;
mod tree;

pub use gcd::gcd;
pub use poly::{Application, Atom, Monomial, Poly};
pub use scalar::{Environment, Scalar, ScalarDisplay};
pub use tree::Expr;

use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Functions with known derivative rules. They are never evaluated
/// symbolically except at zero.
pub const BUILTINS: [&str; 3] = ["sin", "cos", "exp"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("derivative marker on `{name}` at position {pos}, which is not an opaque function")]
    DerivativeOnNonOpaque { name: String, pos: usize },
    #[error("`{name}` at position {pos} is a function and needs an argument")]
    MissingArgument { name: String, pos: usize },
    #[error("coordinate `{name}` at position {pos} cannot be applied")]
    NotAFunction { name: String, pos: usize },
    #[error("literal zero denominator at position {pos}")]
    ZeroDenominatorLiteral { pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("no value bound for {0}")]
    Unbound(String),
    #[error("{0} has no exact rational value here")]
    NotRational(String),
}

/// Parses `text` over `chart` and returns its canonical form.
pub fn parse_scalar(text: &str, chart: &crate::Chart) -> Result<Scalar, ExprError> {
    Expr::parse(text, chart)?.canonicalize()
}
