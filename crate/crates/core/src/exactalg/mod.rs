//! Exact scalars, exponent vectors and sparse Laurent polynomials.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and polynomials are kept in canonical form (no stored zero coefficient),
//! so structural equality is mathematical equality.

mod exponent;
mod intmat;
mod laurent;
mod rational;
mod scalar;

pub use exponent::ExponentVector;
pub use intmat::IntegerMatrix;
pub use laurent::LaurentPolynomial;
pub use rational::{format_rational, int, parse_rational, rat, rational_gcd, Rational};
pub use scalar::{ScalarVector, UNIT_SYMBOL};
