//! Extended-precision reals, complex numbers and dense linear algebra.
//!
//! Every quantity in the crate is carried at the decimal precision of a
//! [`Context`]. Values remember their binary precision; mixed operations
//! round to the larger one.

mod complex;
mod matrix;
mod real;

pub use complex::Complex;
pub use matrix::{lu_solve, lu_solve_transposed, LuDecomposition, Matrix};
pub use real::{Context, Real, DEFAULT_DIGITS, MIN_DIGITS};

/// Builds a numeric context with at least `digits` decimal digits.
pub fn set_precision(digits: u32) -> crate::Result<Context> {
    Context::new(digits)
}
