//! Chart-local symbolic tensor calculus for Poisson–Nijenhuis type structures.
//!
//! Everything is exact. Scalars are rational functions over coordinates and
//! opaque function applications, kept in a canonical reduced form, so equality
//! of tensors is decided by comparing components.

pub mod calculus;
pub mod chart;
pub mod courant;
mod error;
pub mod expr;
pub mod random;
pub mod structures;
pub mod tensor;

pub use chart::{same_chart, Chart};
pub use error::Error;
pub use expr::{Atom, Environment, Expr, ExprError, Rational, Scalar};
pub use structures::{CheckReport, Condition, Residual, Status};
pub use tensor::{Blade, Endo, Form, Matrix, Multi, MultiVector};

pub type Result<T, E = Error> = std::result::Result<T, E>;
