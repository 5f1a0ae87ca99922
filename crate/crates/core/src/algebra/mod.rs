//! Exact rational arithmetic, sparse multivariate polynomials and rational
//! functions.

mod gcd;
mod monomial;
mod polynomial;
pub mod rational;
mod ratfun;
mod univariate;

pub use gcd::gcd;
pub use monomial::{Monomial, Var};
pub use polynomial::Polynomial;
pub use rational::{int, rat, Rational};
pub use ratfun::RationalFunction;
pub use univariate::UPoly;
