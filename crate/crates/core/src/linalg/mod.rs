//! Exact dense linear algebra over the rationals.

mod matrix;
mod poly;

pub use matrix::{sign, Matrix};
pub use poly::Polynomial;
