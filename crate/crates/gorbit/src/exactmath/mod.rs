//! Exact scalar arithmetic over real quadratic towers and exact dense
//! linear algebra. Everything in this module is rounding-free; floating
//! point only appears in explicitly diagnostic conversions.

mod field;
mod matrix;
mod poly;

pub use field::{rational_sign, rational_to_f64, Field, Scalar, ScalarField};
pub use matrix::{ExactMatrix, SolveOutcome};
pub use poly::Poly;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("generator {0} is not square-free")]
    NotSquareFree(u64),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(u64),
    #[error("generator {0} must be at least 2")]
    GeneratorTooSmall(u64),
    #[error("operands belong to different scalar fields")]
    MixedFields,
    #[error("value not representable in this field: {0}")]
    NotInField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}
