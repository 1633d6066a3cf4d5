use std::fmt;

use super::LocalError;
use crate::poly::{Polynomial, Ring};

/// Ideal of the local ring given by generators. Zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(ring: &Ring, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self, LocalError> {
        let mut gens = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(LocalError::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(IdealPresentation { ring: ring.clone(), generators: gens })
    }

    /// Builds an ideal from generators known to share `ring`.
    pub(crate) fn from_parts(ring: &Ring, generators: impl IntoIterator<Item = Polynomial>) -> Self {
        Self::new(ring, generators).expect("generators share the ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Sum of two ideals.
    pub fn sum(&self, other: &IdealPresentation) -> IdealPresentation {
        IdealPresentation {
            ring: self.ring.clone(),
            generators: self.generators.iter().chain(&other.generators).cloned().collect(),
        }
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
