//! Exact scalar fields, polynomials and dense linear algebra.

pub mod bivariate;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod scalar;

pub use bivariate::BivariatePolynomial;
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use roots::{poly_roots, poly_roots_with, RootOptions};
pub use scalar::{
    gauss, imag_unit, int, rat, ExactField, FieldKind, GaussianRational, Rational, Scalar,
};
