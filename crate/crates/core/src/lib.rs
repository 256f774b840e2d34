//! Exact symbolic engine for iterated Poisson polynomial algebras.
//!
//! The crate evaluates and verifies Poisson brackets given by generator
//! data, implements the deleting-derivations isomorphism and the quadratic
//! normalization of the quotient field, verifies torus-action hypotheses,
//! and decides or certifies isomorphism of quadratic Poisson fields through
//! congruence of antisymmetric matrices over Z.
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no
//! floating point anywhere.

pub mod catalog;
pub mod cauchon;
pub mod error;
pub mod exactalg;
pub mod format;
pub mod poisson;
pub mod skewfields;
pub mod torus;

pub use error::{Error, Result};
pub use exactalg::{ExponentVector, IntegerMatrix, LaurentPolynomial, Rational, ScalarVector};
