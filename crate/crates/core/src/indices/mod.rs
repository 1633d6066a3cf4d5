//! Index formulas for vector fields and 1-forms on isolated complete
//! intersection singularities (ICIS).
//!
//! Every operation returns an [`Index`] carrying the integer value together
//! with a provenance list: the ideals whose colengths entered the formula and
//! those colengths. Callers can re-audit any entry with
//! [`crate::local::colength_truncation_oracle`].

mod collection;
mod formulas;
mod germs;
mod sampler;

use std::fmt;

use thiserror::Error;

use crate::local::{standard_basis, Colength, IdealPresentation, LocalError};
use crate::poly::PolyError;
use crate::quadratic::{QuadraticError, SymmetricMatrix};

pub use collection::{chern_obstruction_collection, collection_ideals, collection_index, CollectionSpec};
pub use formulas::{
    euler_obstruction_of_function_icis, gsv_ideal, gsv_index_1form, gsv_index_vf_hypersurface,
    homological_index_1form_icis, index_elk, index_holomorphic_vf, meromorphic_index, milnor_number_hypersurface,
    milnor_number_icis, radial_index_1form_icis,
};
pub use germs::{ICISPresentation, OneFormGerm, PoleChain};
pub use sampler::GenericitySampler;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("non-isolated zero: {ideal} has infinite colength")]
    NonIsolatedZero { ideal: String },
    #[error("zero is not algebraically isolated: the Jacobian vanishes in the local algebra")]
    NotAlgebraicallyIsolated,
    #[error("not an isolated singular point of the form on V (or V not an ICIS): {ideal} has infinite colength")]
    NotIsolatedOnIcis { ideal: String },
    #[error("non-isolated singularity: {ideal} has infinite colength")]
    NonIsolatedSingularity { ideal: String },
    #[error("equation ordering does not give an ICIS chain at step {step} ({ideal} has infinite colength); reorder equations")]
    IcisChain { step: usize, ideal: String },
    #[error("vector field not tangent to V: X(f) is not a multiple of f")]
    NotTangent,
    #[error("zero not isolated in ambient space: {ideal} has infinite colength")]
    AmbientZeroNotIsolated { ideal: String },
    #[error("genericity not reached; increase trials/height (sampled values {values:?})")]
    GenericityNotReached { values: Vec<i64> },
    #[error("chain not an ICIS / non-isolated singular points: {ideal} has infinite colength at pole step {step}")]
    PoleChain { step: usize, ideal: String },
    #[error("collection has a non-isolated special point: {ideal} has infinite colength")]
    CollectionNotIsolated { ideal: String },
    #[error("invalid collection: {0}")]
    InvalidCollection(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index does not fit in a 64-bit integer")]
    Overflow,
    #[error(transparent)]
    Quadratic(#[from] QuadraticError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One colength that entered an index formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenanceEntry {
    pub label: String,
    pub ideal: IdealPresentation,
    pub colength: u64,
}

/// An index value and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Index {
    pub value: i64,
    pub provenance: Vec<ProvenanceEntry>,
    pub gram: Option<SymmetricMatrix>,
    pub details: Vec<(String, String)>,
}

impl Index {
    fn new(value: i64, provenance: Vec<ProvenanceEntry>) -> Self {
        Index { value, provenance, gram: None, details: Vec::new() }
    }

    /// The colengths of the provenance entries, in order.
    pub fn colengths(&self) -> Vec<u64> {
        self.provenance.iter().map(|p| p.colength).collect()
    }

    fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Colength of `ideal` as a provenance entry, or the error built by
/// `on_infinite` from the ideal's printed form.
fn measure(
    label: impl Into<String>,
    ideal: IdealPresentation,
    on_infinite: impl FnOnce(String) -> IndexError,
) -> Result<ProvenanceEntry, IndexError> {
    match standard_basis(&ideal).colength() {
        Colength::Finite(colength) => Ok(ProvenanceEntry { label: label.into(), ideal, colength }),
        Colength::Infinite => Err(on_infinite(ideal.to_string())),
    }
}

fn to_i64(v: u64) -> Result<i64, IndexError> {
    i64::try_from(v).map_err(|_| IndexError::Overflow)
}

/// Colengths of many ideals, in parallel when the `parallel` feature is on.
pub fn colengths(ideals: &[IdealPresentation]) -> Vec<Colength> {
    crate::par::map(ideals, |i| standard_basis(i).colength())
}

/// Sequential reference for [`colengths`].
pub fn colengths_sequential(ideals: &[IdealPresentation]) -> Vec<Colength> {
    crate::par::map_sequential(ideals, |i| standard_basis(i).colength())
}
