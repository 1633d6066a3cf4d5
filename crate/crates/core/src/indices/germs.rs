use num_traits::Zero;

use super::IndexError;
use crate::local::{IdealPresentation, LocalError};
use crate::matrix::RationalMatrix;
use crate::poly::{Polynomial, Ring};

/// `V = {f_1 = ... = f_k = 0}` in `C^N`, of dimension `n = N - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ICISPresentation {
    ring: Ring,
    equations: Vec<Polynomial>,
}

impl ICISPresentation {
    pub fn new(ring: &Ring, equations: Vec<Polynomial>) -> Result<Self, IndexError> {
        if equations.len() >= ring.dimension() {
            return Err(IndexError::InvalidInput(format!(
                "{} equations in {} variables; need fewer equations than variables",
                equations.len(),
                ring.dimension()
            )));
        }
        check_ring(ring, &equations)?;
        if let Some(f) = equations.iter().find(|f| !f.constant_term().is_zero()) {
            return Err(IndexError::InvalidInput(format!("equation {f} does not vanish at the origin")));
        }
        Ok(ICISPresentation { ring: ring.clone(), equations })
    }

    /// The ambient space itself (`k = 0`).
    pub fn smooth(ring: &Ring) -> Self {
        ICISPresentation { ring: ring.clone(), equations: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn codimension(&self) -> usize {
        self.equations.len()
    }

    pub fn dimension(&self) -> usize {
        self.ring.dimension() - self.equations.len()
    }

    /// `V ∩ {g = 0}`, with `g` appended as the last equation.
    pub fn intersect(&self, g: &Polynomial) -> Result<Self, IndexError> {
        let mut equations = self.equations.clone();
        equations.push(g.clone());
        Self::new(&self.ring, equations)
    }

    /// The first `i` equations.
    pub fn truncated(&self, i: usize) -> Self {
        ICISPresentation { ring: self.ring.clone(), equations: self.equations[..i].to_vec() }
    }

    pub fn ideal(&self) -> IdealPresentation {
        IdealPresentation::from_parts(&self.ring, self.equations.iter().cloned())
    }

    /// Pulls every equation back along `x = A y`.
    pub fn change_coordinates(&self, a: &RationalMatrix) -> Result<Self, IndexError> {
        let equations = self.equations.iter().map(|f| f.substitute_linear(a)).collect::<Result<_, _>>()?;
        Ok(ICISPresentation { ring: self.ring.clone(), equations })
    }
}

/// `ω = sum A_i dx_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneFormGerm {
    ring: Ring,
    coefficients: Vec<Polynomial>,
}

impl OneFormGerm {
    pub fn new(ring: &Ring, coefficients: Vec<Polynomial>) -> Result<Self, IndexError> {
        if coefficients.len() != ring.dimension() {
            return Err(IndexError::InvalidInput(format!(
                "1-form needs {} coefficients, got {}",
                ring.dimension(),
                coefficients.len()
            )));
        }
        check_ring(ring, &coefficients)?;
        Ok(OneFormGerm { ring: ring.clone(), coefficients })
    }

    /// `df`.
    pub fn differential(f: &Polynomial) -> Self {
        OneFormGerm { ring: f.ring().clone(), coefficients: f.gradient() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    /// Pullback along `x = A y`: `B_j(y) = sum_i A_ij A_i(A y)`.
    pub fn change_coordinates(&self, a: &RationalMatrix) -> Result<Self, IndexError> {
        let pulled: Vec<Polynomial> =
            self.coefficients.iter().map(|c| c.substitute_linear(a)).collect::<Result<_, _>>()?;
        let coefficients = (0..pulled.len())
            .map(|j| {
                pulled.iter().enumerate().fold(Polynomial::zero(&self.ring), |acc, (i, p)| {
                    if a[(i, j)].is_zero() {
                        acc
                    } else {
                        &acc + &p.scale(&a[(i, j)])
                    }
                })
            })
            .collect();
        Ok(OneFormGerm { ring: self.ring.clone(), coefficients })
    }
}

/// Sections `f_{k+1}, ..., f_{k+l}` of the pole divisors through the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleChain {
    ring: Ring,
    sections: Vec<Polynomial>,
}

impl PoleChain {
    pub fn new(ring: &Ring, sections: Vec<Polynomial>) -> Result<Self, IndexError> {
        check_ring(ring, &sections)?;
        if let Some(f) = sections.iter().find(|f| !f.constant_term().is_zero()) {
            return Err(IndexError::InvalidInput(format!("pole section {f} does not vanish at the origin")));
        }
        Ok(PoleChain { ring: ring.clone(), sections })
    }

    pub fn empty(ring: &Ring) -> Self {
        PoleChain { ring: ring.clone(), sections: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn sections(&self) -> &[Polynomial] {
        &self.sections
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }
}

fn check_ring(ring: &Ring, polys: &[Polynomial]) -> Result<(), IndexError> {
    if polys.iter().any(|p| p.ring() != ring) {
        return Err(LocalError::RingMismatch.into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, RingContext};

    #[test]
    fn icis_validation() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        assert!(ICISPresentation::new(&r, vec![p("x^2 + y^2")]).is_ok());
        assert!(ICISPresentation::new(&r, vec![p("x"), p("y")]).is_err());
        assert!(ICISPresentation::new(&r, vec![p("1 + x")]).is_err());
        assert_eq!(ICISPresentation::smooth(&r).dimension(), 2);
    }

    #[test]
    fn differential_pulls_back_like_a_form() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let f = parse_poly("x^2*y - y^3 + x", &r).unwrap();
        let a = RationalMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let lhs = OneFormGerm::differential(&f).change_coordinates(&a).unwrap();
        let rhs = OneFormGerm::differential(&f.substitute_linear(&a).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn form_arity() {
        let r = RingContext::new(["x", "y"]).unwrap();
        assert!(OneFormGerm::new(&r, vec![Polynomial::one(&r)]).is_err());
    }
}
