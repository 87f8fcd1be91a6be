//! Prime-field scalars and dense exact linear algebra.

mod field;
mod matrix;

pub use field::{is_prime, Field, FieldScalar, DEFAULT_PRIME};
pub use matrix::{combine_randomly, Matrix};
