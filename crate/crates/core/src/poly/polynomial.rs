use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{ExponentVector, PolyError, Rational, Ring};
use crate::matrix::RationalMatrix;

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vector in the local ordering, so the last
/// entry of the map is the leading term (the term of lowest degree).
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::monomial(ring, ExponentVector::one(ring.dimension()), c)
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, super::rat(c))
    }

    pub fn variable(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, ExponentVector::variable(ring.dimension(), i), Rational::one())
    }

    pub fn monomial(ring: &Ring, exps: ExponentVector, c: Rational) -> Self {
        assert_eq!(exps.len(), ring.dimension(), "exponent vector does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zero coefficients.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.dimension(), "exponent vector does not match ring");
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing local order (the leading term comes last).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&ExponentVector> {
        self.terms.last_key_value().map(|(e, _)| e)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::one(self.ring.dimension()))
    }

    /// Largest total degree of a term.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// Smallest total degree of a term, i.e. the degree of the leading monomial.
    pub fn order(&self) -> Option<u64> {
        self.leading_monomial().map(ExponentVector::degree)
    }

    /// Mora's écart: `deg(p) - deg(LM(p))`.
    pub fn ecart(&self) -> u64 {
        match (self.total_degree(), self.order()) {
            (Some(d), Some(o)) => d - o,
            _ => 0,
        }
    }

    /// Largest exponent of each variable over all terms.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.dimension()];
        for e in self.terms.keys() {
            for (o, &x) in out.iter_mut().zip(e.exponents()) {
                *o = (*o).max(x);
            }
        }
        out
    }

    pub fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * x^m * other`.
    pub fn add_scaled(&mut self, c: &Rational, m: &ExponentVector, other: &Polynomial) {
        self.check_ring(other);
        if c.is_zero() {
            return;
        }
        for (e, d) in &other.terms {
            self.add_term(e.mul(m), c * d);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ExponentVector) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, d)| (e.mul(m), d.clone())).collect(),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Drops every term of total degree `>= degree`.
    pub fn truncated(&self, degree: u64) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() < degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k > 0 {
                let lowered = e.lowered(i).expect("k > 0");
                out.add_term(lowered, c * super::rat(i64::from(k)));
            }
        }
        out
    }

    /// Formal partial derivative with respect to the named variable.
    pub fn differentiate(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .ring
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Gradient `(dp/dx_1, ..., dp/dx_N)`.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.dimension()).map(|i| self.derivative(i)).collect()
    }

    /// Substitutes `images[i]` for the `i`-th variable. The result lives in
    /// the ring of the images.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.dimension(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .expect("ring has at least one variable");
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(&target), p.clone()]).collect();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (i, &k) in e.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k];
            }
            out = &out + &term;
        }
        out
    }

    /// `p(M x)`: substitutes the linear forms given by the rows of `m`.
    pub fn substitute_linear(&self, m: &RationalMatrix) -> Result<Polynomial, PolyError> {
        let n = self.ring.dimension();
        if m.rows() != n || m.cols() != n {
            return Err(PolyError::MatrixShape { expected: n });
        }
        if m.determinant().is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|i| Self::linear_form(&self.ring, m.row(i)))
            .collect();
        Ok(self.compose(&images))
    }

    /// `sum_j coeffs[j] * x_j`.
    pub fn linear_form(ring: &Ring, coeffs: &[Rational]) -> Polynomial {
        let n = ring.dimension();
        Self::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (ExponentVector::variable(n, j), c.clone())),
        )
    }

    pub fn is_homogeneous_linear(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 1)
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(same_ring(&self.ring, &other.ring), "polynomials from different rings");
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Parseable rendering, leading (lowest-degree) term first.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &x) in e.exponents().iter().enumerate() {
                let name = &self.ring.variables()[i];
                match x {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{x}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (e, c) in &self.terms {
            for (d, k) in &rhs.terms {
                out.add_term(e.mul(d), c * k);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, RingContext};
    use proptest::prelude::*;

    fn xyz() -> Ring {
        RingContext::new(["x", "y", "z"]).unwrap()
    }

    fn p(s: &str, r: &Ring) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let r = xyz();
        assert_eq!(p("x^2+y^2+z^2", &r).differentiate("x").unwrap(), p("2*x", &r));
        assert!(p("7/3", &r).differentiate("x").unwrap().is_zero());
        assert_eq!(p("x^3*y", &r).differentiate("y").unwrap(), p("x^3", &r));
        assert_eq!(
            p("x", &r).differentiate("w"),
            Err(PolyError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn linear_substitution_examples() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let id = RationalMatrix::identity(2);
        assert_eq!(p("x", &r).substitute_linear(&id).unwrap(), p("x", &r));
        let swap = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(p("x^2", &r).substitute_linear(&swap).unwrap(), p("y^2", &r));
        let shear = RationalMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(p("x+y", &r).substitute_linear(&shear).unwrap(), p("x+2*y", &r));
        let singular = RationalMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(p("x", &r).substitute_linear(&singular), Err(PolyError::SingularMatrix));
    }

    #[test]
    fn leading_term_is_lowest_degree() {
        let r = xyz();
        let f = p("x - x^2 + y^3", &r);
        assert_eq!(f.leading_monomial(), Some(&ExponentVector::new([1, 0, 0])));
        assert_eq!(f.ecart(), 2);
        assert_eq!(f.order(), Some(1));
        assert_eq!(f.total_degree(), Some(3));
    }

    #[test]
    fn display_is_stable() {
        let r = xyz();
        assert_eq!(p("z^2 + y^2 + x^2", &r).to_string(), "x^2 + y^2 + z^2");
        assert_eq!(p("x*y - 2/3*x^2", &r).to_string(), "-2/3*x^2 + x*y");
        assert_eq!(p("0", &r).to_string(), "0");
        assert_eq!(p("3 - x", &r).to_string(), "3 - x");
    }

    #[test]
    fn pow_and_compose() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let f = p("x + y", &r);
        assert_eq!(f.pow(3), p("x^3 + 3*x^2*y + 3*x*y^2 + y^3", &r));
        let g = p("x^2 - y", &r);
        let composed = g.compose(&[p("x + y", &r), p("2*x", &r)]);
        assert_eq!(composed, p("x^2 + 2*x*y + y^2 - 2*x", &r));
        assert_eq!(f.scale(&rat(0)), Polynomial::zero(&r));
    }

    fn arb_poly(ring: Ring) -> impl Strategy<Value = Polynomial> {
        let n = ring.dimension();
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, n), -5i64..6, 1i64..4),
            0..6,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(
                &ring,
                terms.into_iter().map(|(e, a, b)| {
                    (ExponentVector::new(e), Rational::new(a.into(), b.into()))
                }),
            )
        })
    }

    fn ring4() -> Ring {
        RingContext::new(["a", "b", "c", "d"]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(f in arb_poly(ring4()), g in arb_poly(ring4()), h in arb_poly(ring4())) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn leibniz(f in arb_poly(ring4()), g in arb_poly(ring4()), i in 0usize..4) {
            let lhs = (&f * &g).derivative(i);
            let rhs = &(&f * &g.derivative(i)) + &(&g * &f.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parse_format_roundtrip(f in arb_poly(ring4())) {
            let text = f.to_string();
            prop_assert_eq!(parse_poly(&text, &ring4()).unwrap(), f);
        }

        #[test]
        fn no_zero_coefficients(f in arb_poly(ring4()), g in arb_poly(ring4())) {
            let prod = &f * &g;
            prop_assert!(prod.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
