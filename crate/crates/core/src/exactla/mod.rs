//! Exact dense linear algebra over prime fields.

mod field;
mod matrix;

pub use field::{primitive_root_of_unity, PrimeField, Scalar};
pub use matrix::{Echelon, Matrix};
