use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::PolyError;

/// Exponent vector of a monomial `x^a = x_1^{a_1} ... x_N^{a_N}`.
///
/// The `Ord` implementation is the negative-degree reverse-lexicographic
/// local ordering: `1` is the largest monomial, lower total degree compares
/// greater, and ties are broken reverse-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: SmallVec<[u32; 4]>,
    degree: u64,
}

/// Monomial orderings available to the standard-basis engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LocalOrdering {
    /// Negative-degree reverse lexicographic.
    #[default]
    NegDegRevLex,
}

impl LocalOrdering {
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            LocalOrdering::NegDegRevLex => negdegrevlex(a, b),
        }
    }
}

/// Compares two exponent vectors in the given local ordering.
pub fn compare_local(
    a: &ExponentVector,
    b: &ExponentVector,
    ord: LocalOrdering,
) -> Result<Ordering, PolyError> {
    if a.len() != b.len() {
        return Err(PolyError::DimensionMismatch(a.len(), b.len()));
    }
    Ok(ord.compare(a, b))
}

fn negdegrevlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    match b.degree.cmp(&a.degree) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len(), other.len());
        negdegrevlex(self, other)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ExponentVector {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        let exps: SmallVec<[u32; 4]> = exps.into_iter().collect();
        let degree = exps.iter().map(|&e| u64::from(e)).sum();
        ExponentVector { exps, degree }
    }

    pub fn one(n: usize) -> Self {
        ExponentVector { exps: SmallVec::from_elem(0, n), degree: 0 }
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = Self::one(n);
        e.exps[i] = 1;
        e.degree = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// `self | other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(ExponentVector::new(other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b)))
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut exps = SmallVec::with_capacity(self.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_add(*b)?);
        }
        Some(ExponentVector { exps, degree: self.degree + other.degree })
    }

    /// Product of monomials. Panics on exponent overflow.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this monomial is a pure power `x_i^a` with `a > 0`, returns `(i, a)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Exponent vector with entry `i` decreased by one.
    pub fn lowered(&self, i: usize) -> Option<Self> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut e = self.clone();
        e.exps[i] -= 1;
        e.degree -= 1;
        Some(e)
    }

    pub fn raised(&self, i: usize) -> Self {
        let mut e = self.clone();
        e.exps[i] = e.exps[i].checked_add(1).expect("exponent overflow");
        e.degree += 1;
        e
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
