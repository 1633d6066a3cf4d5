use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};

use super::mora::reduce_below_corner;
use super::IdealPresentation;
use crate::matrix::RationalMatrix;
use crate::poly::{ExponentVector, Polynomial, Rational, Ring};

/// Staircase of a zero-dimensional ideal: the monomials outside its leading
/// ideal, listed from `1` upward in degree (decreasing local order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    ideal: IdealPresentation,
    monomials: Vec<ExponentVector>,
}

impl QuotientBasis {
    pub(crate) fn new(ideal: IdealPresentation, monomials: Vec<ExponentVector>) -> Self {
        QuotientBasis { ideal, monomials }
    }

    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &ExponentVector) -> Option<usize> {
        self.monomials.iter().position(|s| s == m)
    }
}

/// All monomials inside the box `x_i^{e_i}, e_i < bounds[i]` that are not
/// divisible by any of `lms`, sorted with `1` first.
pub(crate) fn enumerate_staircase(bounds: &[u32], lms: &[ExponentVector]) -> Vec<ExponentVector> {
    fn walk(i: usize, current: &mut Vec<u32>, bounds: &[u32], lms: &[ExponentVector], out: &mut Vec<ExponentVector>) {
        if i == bounds.len() {
            out.push(ExponentVector::new(current.iter().copied()));
            return;
        }
        for e in 0..bounds[i] {
            current[i] = e;
            // Later variables are zero here, so divisibility is monotone in e.
            let probe = ExponentVector::new(current.iter().copied());
            if lms.iter().any(|m| m.divides(&probe)) {
                break;
            }
            walk(i + 1, current, bounds, lms, out);
        }
        current[i] = 0;
    }
    let mut out = Vec::new();
    let mut current = vec![0; bounds.len()];
    walk(0, &mut current, bounds, lms, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// The finite-dimensional algebra `O/I` in staircase coordinates.
///
/// Multiplication by each variable is stored as a matrix whose `j`-th column
/// is the normal form of `x_k * m_j`. Every monomial of degree at least the
/// corner lies in `I`.
#[derive(Debug)]
pub struct QuotientAlgebra {
    ring: Ring,
    staircase: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    corner: u64,
    multiplication: Vec<RationalMatrix>,
}

impl QuotientAlgebra {
    pub(crate) fn build(ring: &Ring, staircase: Vec<ExponentVector>, elements: &[Polynomial]) -> Self {
        let n = ring.dimension();
        let d = staircase.len();
        let corner = staircase.iter().map(ExponentVector::degree).max().map_or(0, |m| m + 1);
        let index: HashMap<ExponentVector, usize> = staircase.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut multiplication = Vec::with_capacity(n);
        for k in 0..n {
            let mut mat = RationalMatrix::zeros(d, d);
            for (j, m) in staircase.iter().enumerate() {
                let shifted = m.raised(k);
                if let Some(&i) = index.get(&shifted) {
                    mat[(i, j)] = Rational::one();
                } else if shifted.degree() < corner {
                    let nf = reduce_below_corner(&Polynomial::monomial(ring, shifted, Rational::one()), elements, corner);
                    for (e, c) in nf.terms() {
                        mat[(index[e], j)] = c.clone();
                    }
                }
            }
            multiplication.push(mat);
        }
        QuotientAlgebra { ring: ring.clone(), staircase, index, corner, multiplication }
    }

    pub fn dimension(&self) -> usize {
        self.staircase.len()
    }

    pub fn staircase(&self) -> &[ExponentVector] {
        &self.staircase
    }

    /// Degree from which on every monomial vanishes in the quotient.
    pub fn corner(&self) -> u64 {
        self.corner
    }

    /// Matrix of multiplication by the `k`-th variable.
    pub fn multiplication_matrix(&self, k: usize) -> &RationalMatrix {
        &self.multiplication[k]
    }

    /// Coordinates of the class of a monomial.
    pub fn monomial_coordinates(&self, m: &ExponentVector) -> Vec<Rational> {
        let memo = RefCell::new(HashMap::new());
        self.monomial_coords_memo(m, &memo)
    }

    fn monomial_coords_memo(&self, m: &ExponentVector, memo: &RefCell<HashMap<ExponentVector, Vec<Rational>>>) -> Vec<Rational> {
        let d = self.dimension();
        if m.degree() >= self.corner {
            return vec![Rational::zero(); d];
        }
        if let Some(&i) = self.index.get(m) {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            return v;
        }
        if let Some(v) = memo.borrow().get(m) {
            return v.clone();
        }
        let k = (0..m.len()).find(|&k| m.get(k) > 0).expect("non-staircase monomial is not 1");
        let lower = self.monomial_coords_memo(&m.lowered(k).unwrap(), memo);
        let v = self.multiplication[k].mul_vec(&lower);
        memo.borrow_mut().insert(m.clone(), v.clone());
        v
    }

    /// Coordinates of many monomials, sharing intermediate results.
    pub fn coordinates_of_monomials(&self, monomials: &[ExponentVector]) -> Vec<Vec<Rational>> {
        let memo = RefCell::new(HashMap::new());
        monomials.iter().map(|m| self.monomial_coords_memo(m, &memo)).collect()
    }

    /// Coordinates of the class of `p` in the staircase basis.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Rational> {
        let memo = RefCell::new(HashMap::new());
        let mut out = vec![Rational::zero(); self.dimension()];
        for (e, c) in p.terms() {
            if e.degree() >= self.corner {
                continue;
            }
            let v = self.monomial_coords_memo(e, &memo);
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    pub fn to_polynomial(&self, coords: &[Rational]) -> Polynomial {
        Polynomial::from_terms(&self.ring, self.staircase.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Product of two classes given in coordinates.
    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let pa = self.to_polynomial(a);
        let pb = self.to_polynomial(b);
        self.coordinates(&(&pa * &pb))
    }
}
