//! Exact linear algebra over the rationals and prime fields.

pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::{add_vec, axpy, combine, is_zero_vec, scale_vec, sub_vec, unit_vec, zero_vec, Mat, Solver};
pub use scalar::{sign, Field, Scalar};
pub use subspace::{Coordinatizer, Subspace};
