//! Exact multivariate algebra over `w, x, y, z`: sparse polynomials,
//! rational functions with factored linear denominators, the shift
//! substitutions that drive the recursions, and univariate specializations.

mod dense;
mod linear;
mod monomial;
mod poly;
mod ratfun;
pub mod rational;
mod univariate;

pub use linear::{LinearForm, ShiftSubstitution};
pub use monomial::{Monomial, Var};
pub use poly::{IntPolynomial, Polynomial, SparsePolynomial};
pub use ratfun::{IntRationalFunction, RationalFunction};
pub use rational::{format_rational, parse_rational, ratio, Coeff, Integer, Rational};
pub use univariate::{series_coeffs, UniPoly, UniRationalFunction};
