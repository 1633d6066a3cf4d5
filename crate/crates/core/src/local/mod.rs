//! Ideals in the local ring `O_{C^N,0}` of polynomial germs.
//!
//! [`standard_basis`] runs Mora's tangent-cone algorithm in the
//! negative-degree reverse-lexicographic ordering. Colengths, staircases and
//! multiplication in `O/I` are read off the resulting leading ideal.
//! [`colength_truncation_oracle`] recomputes colengths by plain linear
//! algebra on truncated polynomial spaces and is used to audit the engine.

mod ideal;
mod mora;
mod oracle;
mod quotient;

use std::fmt;

use thiserror::Error;

pub use ideal::IdealPresentation;
pub use mora::{standard_basis, weak_normal_form, weak_normal_form_with_cofactors, Division, StandardBasis};
pub use oracle::{colength_truncation_oracle, OracleColength, DEFAULT_ORACLE_CAP};
pub use quotient::{QuotientAlgebra, QuotientBasis};

use crate::poly::Polynomial;

/// `dim O/I`, which may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(d) => Some(d),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(d) => write!(f, "{d}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("ideal {0} has infinite colength")]
    InfiniteColength(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
}

/// Colength of `I` from its standard basis.
pub fn colength(ideal: &IdealPresentation) -> Colength {
    standard_basis(ideal).colength()
}

/// Staircase basis of `O/I`.
pub fn quotient_basis(ideal: &IdealPresentation) -> Result<QuotientBasis, LocalError> {
    standard_basis(ideal).quotient_basis()
}

/// Normal form of `p` with respect to `basis`.
///
/// For ideals of finite colength this is the unique representative of `p`
/// in the span of the staircase. Otherwise it is Mora's weak normal form,
/// whose leading monomial (if any) lies outside the leading ideal.
pub fn normal_form(p: &Polynomial, basis: &StandardBasis) -> Polynomial {
    basis.normal_form(p)
}

/// `NF(p * q)` in a zero-dimensional quotient.
pub fn multiply_in_quotient(
    p: &Polynomial,
    q: &Polynomial,
    basis: &StandardBasis,
) -> Result<Polynomial, LocalError> {
    let algebra = basis.algebra()?;
    let v = algebra.coordinates(&(p * q));
    Ok(algebra.to_polynomial(&v))
}

/// `p` lies in `I` (as an ideal of the local ring).
pub fn ideal_membership(p: &Polynomial, ideal: &IdealPresentation) -> bool {
    standard_basis(ideal).contains(p)
}
