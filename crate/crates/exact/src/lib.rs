//! Exact arithmetic building blocks.
//!
//! Everything here works over the rationals (`Q = BigRational`) or over
//! sparse multivariate polynomials with rational coefficients. Matrices are
//! generic over a small [`Scalar`] trait so the same evaluation code can run
//! on concrete numbers and on symbolic entries.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{Echelon, Matrix, ShapeError};
pub use poly::{Monomial, Poly};
pub use scalar::{q, q_frac, q_from_str, q_to_string, Scalar, Q};
