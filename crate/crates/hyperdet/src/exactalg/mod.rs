//! Exact arithmetic substrate: rationals, sparse multivariate integer
//! polynomials, univariate resultants and discriminants, and fraction-free
//! linear algebra.

pub mod linalg;
pub mod poly;
pub mod rational;
pub mod unipoly;
pub mod unirat;

pub use linalg::RationalMatrix;
pub use poly::{EntryVar, Monomial, Polynomial, PolynomialJson};
pub use rational::{format_rational, parse_rational, rat, rat_big, Rational};
pub use unipoly::{det_poly_matrix, sylvester_resultant, univariate_discriminant, UniPoly};
pub use unirat::RatPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not divisible by the divisor over the integers")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("assignment is missing variable {0}")]
    MissingVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniError {
    #[error("both operands are constant in z")]
    BothConstant,
    #[error("discriminant needs degree >= 2, got {0}")]
    DegreeTooLow(usize),
    #[error("leading coefficient is the zero polynomial")]
    ZeroLeadingCoefficient,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
}
