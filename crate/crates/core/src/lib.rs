//! Exact computation of indices of singular points of vector fields and
//! 1-forms on isolated singularities.
//!
//! Every index is reduced to one of three exact computations:
//!
//! * the colength `dim O/I` of an ideal in the local ring at the origin,
//!   obtained from a Mora standard basis ([`local`]);
//! * the signature of the Eisenbud–Levine–Khimshiashvili form on a local
//!   algebra ([`quadratic`]);
//! * Möbius inversion on a poset of strata ([`strata`]).
//!
//! Colengths can be cross-checked by an independent degree-truncation
//! oracle ([`local::colength_truncation_oracle`]) that shares no code with
//! the standard-basis engine beyond polynomial arithmetic.

pub mod indices;
pub mod local;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod quadratic;
pub mod strata;

pub use indices::{GenericitySampler, Index, IndexError, ProvenanceEntry};
pub use local::{Colength, IdealPresentation, OracleColength, StandardBasis};
pub use matrix::RationalMatrix;
pub use poly::{parse_poly, ExponentVector, LocalOrdering, Polynomial, Rational, Ring, RingContext};
