//! Exact coefficient arithmetic, Laurent polynomials, rational-function
//! values, and matrices over all of the above.
//!
//! Everything here is exact: integers and rationals via arbitrary
//! precision, prime fields via canonical residues. No floating point
//! anywhere.

mod domain;
mod laurent;
mod matrix;
mod ratfunc;

pub use domain::{Coeff, CoefficientDomain};
pub use laurent::LaurentPolynomial;
pub use matrix::{ExactMatrix, ScalarMatrix};
pub use ratfunc::{degree_rational, normalize_value, RationalFunctionValue};
