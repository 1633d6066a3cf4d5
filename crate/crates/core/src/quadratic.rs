//! The Eisenbud–Levine–Khimshiashvili quadratic form on a local algebra and
//! exact signatures of rational symmetric matrices.
//!
//! For a real vector field `X` with an algebraically isolated zero, the local
//! algebra `R_X = O/(X_1, ..., X_n)` carries the form `Q(φ, ψ) = ℓ(φ ψ)`
//! where `ℓ` is any linear functional positive on the class of the Jacobian
//! determinant `J_X`. Its signature is the local topological degree of `X`.

mod charpoly;

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::local::{IdealPresentation, LocalError, QuotientBasis, StandardBasis};
use crate::matrix::RationalMatrix;
use crate::poly::{determinant, ExponentVector, Polynomial, Rational, Ring};

pub use charpoly::characteristic_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadraticError {
    #[error("vector field on a {ring}-dimensional space needs {ring} components, got {got}")]
    ComponentCount { ring: usize, got: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("normal form of the Jacobian is zero: the zero is not algebraically isolated")]
    DegenerateJacobian,
    #[error("signature methods disagree: elimination gives {elimination:?}, characteristic polynomial gives {charpoly:?}")]
    MethodsDisagree { elimination: (usize, usize, usize), charpoly: (usize, usize, usize) },
    #[error("functional and quotient basis refer to different staircases")]
    StaircaseMismatch,
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// `X = sum X_i d/dx_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFieldGerm {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl VectorFieldGerm {
    pub fn new(ring: &Ring, components: Vec<Polynomial>) -> Result<Self, QuadraticError> {
        if components.len() != ring.dimension() {
            return Err(QuadraticError::ComponentCount { ring: ring.dimension(), got: components.len() });
        }
        if components.iter().any(|c| c.ring() != ring) {
            return Err(LocalError::RingMismatch.into());
        }
        Ok(VectorFieldGerm { ring: ring.clone(), components })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `J_X = (X_1, ..., X_N)`.
    pub fn ideal(&self) -> IdealPresentation {
        IdealPresentation::from_parts(&self.ring, self.components.iter().cloned())
    }

    /// Applies `Z ↦ A^{-1} Z(A y)` for an invertible matrix `A`.
    pub fn change_coordinates(&self, a: &RationalMatrix) -> Option<VectorFieldGerm> {
        let inv = a.inverse()?;
        let pulled: Vec<Polynomial> = self
            .components
            .iter()
            .map(|c| c.substitute_linear(a).expect("invertible"))
            .collect();
        let components = (0..pulled.len())
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for (j, p) in pulled.iter().enumerate() {
                    acc = &acc + &p.scale(&inv[(i, j)]);
                }
                acc
            })
            .collect();
        Some(VectorFieldGerm { ring: self.ring.clone(), components })
    }
}

/// `det(dX_i/dx_j)`.
pub fn jacobian_determinant(field: &VectorFieldGerm) -> Polynomial {
    let rows: Vec<Vec<Polynomial>> = field.components.iter().map(Polynomial::gradient).collect();
    determinant(&rows)
}

/// Linear functional on `O/I`, given by its values on the staircase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional {
    staircase: Vec<ExponentVector>,
    values: Vec<Rational>,
}

impl LinearFunctional {
    pub fn new(quotient: &QuotientBasis, values: Vec<Rational>) -> Result<Self, QuadraticError> {
        if values.len() != quotient.len() {
            return Err(QuadraticError::StaircaseMismatch);
        }
        Ok(LinearFunctional { staircase: quotient.monomials().to_vec(), values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn apply(&self, coords: &[Rational]) -> Rational {
        self.values
            .iter()
            .zip(coords)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

fn check_staircase(quotient: &QuotientBasis, basis: &StandardBasis) -> Result<(), QuadraticError> {
    match basis.staircase() {
        Some(s) if s == quotient.monomials() => Ok(()),
        Some(_) => Err(QuadraticError::StaircaseMismatch),
        None => Err(LocalError::InfiniteColength(basis.ideal().to_string()).into()),
    }
}

/// Every sign-adjusted coordinate functional `sign(c_m) * m^*` over the
/// staircase monomials `m` with nonzero coefficient `c_m` in `NF(J)`, deepest
/// monomial first. Each satisfies `ℓ(J) = |c_m| > 0`.
pub fn elk_functional_candidates(
    quotient: &QuotientBasis,
    basis: &StandardBasis,
    jacobian: &Polynomial,
) -> Result<Vec<LinearFunctional>, QuadraticError> {
    check_staircase(quotient, basis)?;
    let coords = basis.algebra()?.coordinates(jacobian);
    let out: Vec<LinearFunctional> = coords
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let mut values = vec![Rational::zero(); coords.len()];
            values[i] = if c.is_negative() { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
            LinearFunctional { staircase: quotient.monomials().to_vec(), values }
        })
        .collect();
    if out.is_empty() {
        return Err(QuadraticError::DegenerateJacobian);
    }
    Ok(out)
}

/// The coordinate functional at the deepest staircase monomial carrying a
/// nonzero coefficient of `NF(J)`, signed so that `ℓ(J) > 0`.
pub fn elk_functional(
    quotient: &QuotientBasis,
    basis: &StandardBasis,
    jacobian: &Polynomial,
) -> Result<LinearFunctional, QuadraticError> {
    Ok(elk_functional_candidates(quotient, basis, jacobian)?.swap_remove(0))
}

/// `G[i][j] = ℓ(NF(m_i m_j))`.
pub fn gram_matrix(
    quotient: &QuotientBasis,
    basis: &StandardBasis,
    functional: &LinearFunctional,
) -> Result<SymmetricMatrix, QuadraticError> {
    check_staircase(quotient, basis)?;
    if functional.staircase != quotient.monomials() {
        return Err(QuadraticError::StaircaseMismatch);
    }
    let algebra = basis.algebra()?;
    let stairs = quotient.monomials();
    let d = stairs.len();
    let mut products = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in i..d {
            products.push(stairs[i].mul(&stairs[j]));
        }
    }
    let coords = algebra.coordinates_of_monomials(&products);
    let mut g = RationalMatrix::zeros(d, d);
    let mut k = 0;
    for i in 0..d {
        for j in i..d {
            let v = functional.apply(&coords[k]);
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
            k += 1;
        }
    }
    Ok(SymmetricMatrix { inner: g })
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricMatrix {
    inner: RationalMatrix,
}

impl SymmetricMatrix {
    pub fn new(m: RationalMatrix) -> Result<Self, QuadraticError> {
        if !m.is_symmetric() {
            return Err(QuadraticError::NotSymmetric);
        }
        Ok(SymmetricMatrix { inner: m })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, QuadraticError> {
        Self::new(RationalMatrix::from_ints(rows))
    }

    pub fn dimension(&self) -> usize {
        self.inner.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.inner
    }

    /// `Aᵀ M A`.
    pub fn congruent(&self, a: &RationalMatrix) -> SymmetricMatrix {
        SymmetricMatrix { inner: a.transpose().mul(&self.inner).mul(a) }
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// Inertia and signature of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignatureResult {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub signature: i64,
}

impl SignatureResult {
    fn from_inertia((positive, negative, zero): (usize, usize, usize)) -> Self {
        SignatureResult { positive, negative, zero, signature: positive as i64 - negative as i64 }
    }
}

/// Exact inertia, computed by symmetric elimination and by Descartes' rule
/// on the characteristic polynomial. The two must agree.
pub fn signature(m: &SymmetricMatrix) -> Result<SignatureResult, QuadraticError> {
    let elimination = inertia_by_elimination(m);
    let charpoly = inertia_by_charpoly(m);
    if elimination != charpoly {
        return Err(QuadraticError::MethodsDisagree { elimination, charpoly });
    }
    Ok(SignatureResult::from_inertia(elimination))
}

/// `(positive, negative, zero)` by congruence elimination with 1x1 pivots on
/// nonzero diagonal entries and 2x2 pivots `[[0, b], [b, 0]]` otherwise.
pub fn inertia_by_elimination(m: &SymmetricMatrix) -> (usize, usize, usize) {
    let n = m.dimension();
    let mut a: Vec<Vec<Rational>> = m.inner.to_rows();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        if let Some(k) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(k);
            let piv = a[p][p].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &r in &active {
                if a[r][p].is_zero() {
                    continue;
                }
                let f = &a[r][p] / &piv;
                for &s in &active {
                    if !a[p][s].is_zero() {
                        let sub = &f * &a[p][s];
                        a[r][s] -= sub;
                    }
                }
            }
            continue;
        }
        let pair = active
            .iter()
            .enumerate()
            .flat_map(|(x, &i)| active[x + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((p, q)) = pair else {
            break;
        };
        // Block [[0, b], [b, 0]] has one positive and one negative eigenvalue.
        pos += 1;
        neg += 1;
        active.retain(|&i| i != p && i != q);
        let b = a[p][q].clone();
        for &r in &active {
            for &s in &active {
                // [a_rp, a_rq] B^{-1} [a_ps, a_qs]ᵀ with B^{-1} = [[0, 1/b], [1/b, 0]]
                let t = &a[r][p] * &a[q][s] + &a[r][q] * &a[p][s];
                if !t.is_zero() {
                    a[r][s] -= t / &b;
                }
            }
        }
    }
    let zero = n - pos - neg;
    (pos, neg, zero)
}

fn sign_changes<'a>(coeffs: impl Iterator<Item = (usize, &'a Rational)>, flip_odd: bool) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for (d, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        let positive = c.is_positive() != (flip_odd && d % 2 == 1);
        if last.is_some_and(|l| l != positive) {
            changes += 1;
        }
        last = Some(positive);
    }
    changes
}

/// `(positive, negative, zero)` from the characteristic polynomial. Every
/// root is real, so Descartes' rule of signs is exact.
pub fn inertia_by_charpoly(m: &SymmetricMatrix) -> (usize, usize, usize) {
    let p = characteristic_polynomial(&m.inner);
    let zero = p.iter().position(|c| !c.is_zero()).unwrap_or(p.len());
    let pos = sign_changes(p.iter().enumerate(), false);
    let neg = sign_changes(p.iter().enumerate(), true);
    (pos, neg, zero)
}
