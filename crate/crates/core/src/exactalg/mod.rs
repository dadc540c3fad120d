//! Exact arithmetic foundation: integer lattices, sparse Laurent polynomials,
//! rational functions with factored denominators, and the expression parser.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod univariate;

pub use matrix::{
    hermite_normal_form, integer_kernel, lattice_basis, lattice_coordinates, rank, row_span_contains,
    smith_normal_form, IntMatrix, SmithForm,
};
pub use parse::parse;
pub use poly::{determinant, LaurentPolynomial};
pub use ratfun::RationalFunction;
pub use univariate::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}
