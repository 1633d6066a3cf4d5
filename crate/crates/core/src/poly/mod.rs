//! Sparse multivariate polynomials over the rationals.

mod minors;
mod monomial;
mod parse;
mod polynomial;
mod ring;

use thiserror::Error;

pub use minors::{determinant, maximal_minors};
pub use monomial::{compare_local, ExponentVector, LocalOrdering};
pub use parse::{parse_poly, ParseError};
pub use polynomial::Polynomial;
pub use ring::{Ring, RingContext};

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring must declare at least one variable")]
    EmptyRing,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent vectors of length {0} and {1} are not comparable")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("expected a {expected}x{expected} matrix")]
    MatrixShape { expected: usize },
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
