use std::borrow::Cow;
use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use super::quotient::{enumerate_staircase, QuotientAlgebra, QuotientBasis};
use super::{Colength, IdealPresentation, LocalError};
use crate::poly::{ExponentVector, LocalOrdering, Polynomial, Rational};

/// Standard basis of an ideal of the local ring.
///
/// Elements are monic and interreduced on leading monomials: no leading
/// monomial divides another.
#[derive(Debug, Clone)]
pub struct StandardBasis {
    ideal: IdealPresentation,
    elements: Vec<Polynomial>,
    ordering: LocalOrdering,
    colength: Colength,
    staircase: Option<Vec<ExponentVector>>,
    algebra: OnceLock<Arc<QuotientAlgebra>>,
}

struct Reducer<'a> {
    poly: Cow<'a, Polynomial>,
    lm: ExponentVector,
    ecart: u64,
}

impl<'a> Reducer<'a> {
    fn new(poly: Cow<'a, Polynomial>) -> Self {
        let lm = poly.leading_monomial().expect("reducers are nonzero").clone();
        let ecart = poly.ecart();
        Reducer { poly, lm, ecart }
    }
}

/// Index of the reducer with minimal écart whose leading monomial divides
/// `lm`; the earliest one wins ties.
fn select_reducer(reducers: &[Reducer<'_>], lm: &ExponentVector) -> Option<usize> {
    reducers
        .iter()
        .enumerate()
        .filter(|(_, r)| r.lm.divides(lm))
        .min_by_key(|(i, r)| (r.ecart, *i))
        .map(|(i, _)| i)
}

/// Cancels the leading term of `h` against `g`: returns the factor `q`
/// (as coefficient and monomial) such that `h - q*g` has a smaller leading
/// term, and performs the update in place.
fn cancel_leading(h: &mut Polynomial, g: &Polynomial, g_lm: &ExponentVector) -> (Rational, ExponentVector) {
    let (h_lm, h_lc) = h.leading_term().map(|(e, c)| (e.clone(), c.clone())).expect("h nonzero");
    let g_lc = g.leading_coefficient().expect("g nonzero");
    let m = g_lm.quotient_of(&h_lm).expect("reducer divides");
    let c = h_lc / g_lc;
    h.add_scaled(&-c.clone(), &m, g);
    (c, m)
}

/// Mora's weak normal form.
///
/// Returns `h` with `u*f - h` in the ideal generated by `reducers` for some
/// unit `u`, and either `h = 0` or `LM(h)` not divisible by any leading
/// monomial of the reducers. Reducers are chosen with minimal écart, and
/// intermediate results whose écart is smaller than the chosen reducer's are
/// admitted as further reducers.
pub fn weak_normal_form(f: &Polynomial, reducers: &[Polynomial]) -> Polynomial {
    let mut pool: Vec<Reducer<'_>> = reducers
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Reducer::new(Cow::Borrowed(g)))
        .collect();
    let mut h = f.clone();
    while let Some(lm) = h.leading_monomial().cloned() {
        let Some(i) = select_reducer(&pool, &lm) else {
            break;
        };
        if pool[i].ecart > h.ecart() {
            pool.push(Reducer::new(Cow::Owned(h.clone())));
        }
        let (poly, g_lm) = (pool[i].poly.clone(), pool[i].lm.clone());
        cancel_leading(&mut h, &poly, &g_lm);
    }
    h
}

/// Result of a tracked weak division: `unit * f = sum cofactors[i] * g_i + remainder`.
#[derive(Debug, Clone, PartialEq)]
pub struct Division {
    pub unit: Polynomial,
    pub cofactors: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Mora's weak normal form with a transcript of the division.
///
/// `unit` has nonzero constant term, so it is invertible in the local ring.
pub fn weak_normal_form_with_cofactors(f: &Polynomial, generators: &[Polynomial]) -> Division {
    let ring = f.ring().clone();
    let s = generators.len();
    // Every pool entry t carries (c_t, d_t) with t = c_t*f + sum d_t[i]*g_i.
    let mut pool: Vec<(Reducer<'_>, Polynomial, Vec<Polynomial>)> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut d = vec![Polynomial::zero(&ring); s];
        d[i] = Polynomial::one(&ring);
        pool.push((Reducer::new(Cow::Borrowed(g)), Polynomial::zero(&ring), d));
    }
    let mut h = f.clone();
    let mut unit = Polynomial::one(&ring);
    let mut cof = vec![Polynomial::zero(&ring); s];
    while let Some(lm) = h.leading_monomial().cloned() {
        let reducers: Vec<&Reducer<'_>> = pool.iter().map(|(r, _, _)| r).collect();
        let Some(i) = reducers
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lm.divides(&lm))
            .min_by_key(|(j, r)| (r.ecart, *j))
            .map(|(j, _)| j)
        else {
            break;
        };
        if pool[i].0.ecart > h.ecart() {
            let d: Vec<Polynomial> = cof.iter().map(|a| -a).collect();
            pool.push((Reducer::new(Cow::Owned(h.clone())), unit.clone(), d));
        }
        let (poly, g_lm) = (pool[i].0.poly.clone(), pool[i].0.lm.clone());
        let (c, m) = cancel_leading(&mut h, &poly, &g_lm);
        // h' = h - q*t  =>  (u - q c_t) f = h' + sum (a + q d_t) g
        let (_, c_t, d_t) = &pool[i];
        unit.add_scaled(&-c.clone(), &m, c_t);
        for (a, d) in cof.iter_mut().zip(d_t) {
            a.add_scaled(&c, &m, d);
        }
    }
    debug_assert!(!unit.constant_term().is_zero());
    Division { unit, cofactors: cof, remainder: h }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (f_lm, f_lc) = f.leading_term().expect("nonzero");
    let (g_lm, g_lc) = g.leading_term().expect("nonzero");
    let lcm = f_lm.lcm(g_lm);
    let mut s = Polynomial::zero(f.ring());
    s.add_scaled(&f_lc.recip(), &f_lm.quotient_of(&lcm).expect("lcm"), f);
    s.add_scaled(&-g_lc.recip(), &g_lm.quotient_of(&lcm).expect("lcm"), g);
    s
}

/// Largest `D` for which the truncated computation of `I + m^D` is tried
/// before running Mora's algorithm on `I` itself.
const TRUNCATION_LIMIT: u64 = 32;

/// Computes a standard basis of `ideal`.
///
/// For `D = 4, 8, ..., 32` the standard basis of `I + m^D` is computed in
/// `O/m^D`. If its staircase ends below degree `c < D` then
/// `m^c ⊆ I + m^{c+1}`, so `m^c ⊆ I` by Nakayama's lemma and the result is a
/// standard basis of `I`. Otherwise Mora's algorithm runs on `I`.
pub fn standard_basis(ideal: &IdealPresentation) -> StandardBasis {
    let ring = ideal.ring().clone();
    let generators: Vec<Polynomial> =
        ideal.generators().iter().filter(|g| !g.is_zero()).map(Polynomial::monic).collect();
    if generators.iter().any(|g| g.leading_monomial().is_some_and(ExponentVector::is_one)) {
        return StandardBasis::finish(ideal.clone(), vec![Polynomial::one(&ring)]);
    }
    let mut d = 4;
    while d <= TRUNCATION_LIMIT && !generators.is_empty() {
        if let Some(elements) = certified_truncated_basis(&generators, d) {
            return StandardBasis::finish(ideal.clone(), elements);
        }
        d *= 2;
    }
    StandardBasis::finish(ideal.clone(), mora(generators))
}

type PairKey = (u64, Reverse<ExponentVector>, usize, usize);

fn pair_key(basis: &[Polynomial], i: usize, j: usize) -> PairKey {
    let lcm = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
    (lcm.degree(), Reverse(lcm), i, j)
}

fn all_pairs(basis: &[Polynomial]) -> BTreeSet<PairKey> {
    (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| pair_key(basis, i, j)).collect()
}

/// Standard basis of `I + m^limit`, returned only when its highest corner
/// lies below `limit`.
fn certified_truncated_basis(generators: &[Polynomial], limit: u64) -> Option<Vec<Polynomial>> {
    let ring = generators[0].ring().clone();
    let mut corner = limit;
    let mut basis: Vec<Polynomial> =
        generators.iter().map(|g| g.truncated(limit)).filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut pairs = all_pairs(&basis);
    if let Some(c) = highest_corner(&basis).filter(|&c| c < corner) {
        corner = c;
        truncate_all(&mut basis, corner);
    }
    while let Some((lcm_degree, _, i, j)) = pairs.pop_first() {
        if lcm_degree >= corner {
            continue;
        }
        let h = reduce_truncated(&s_polynomial(&basis[i], &basis[j]), &basis, corner);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.leading_monomial().is_some_and(ExponentVector::is_one) {
            return Some(vec![Polynomial::one(&ring)]);
        }
        basis.push(h);
        let new = basis.len() - 1;
        for i in 0..new {
            pairs.insert(pair_key(&basis, i, new));
        }
        if let Some(c) = highest_corner(&basis).filter(|&c| c < corner) {
            corner = c;
            truncate_all(&mut basis, corner);
        }
    }
    (corner < limit).then(|| minimal(basis))
}

/// Mora's algorithm with the normal pair strategy: smallest degree of the
/// lcm of leading monomials first, then the larger lcm in the local
/// ordering, then the older pair.
fn mora(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let Some(ring) = basis.first().map(|g| g.ring().clone()) else {
        return basis;
    };
    let mut pairs = all_pairs(&basis);

    // Once the leading ideal of the partial basis contains every monomial of
    // degree `corner`, so does the ideal itself, and all terms of degree
    // `>= corner` can be dropped.
    let mut corner = highest_corner(&basis);
    if let Some(d) = corner {
        truncate_all(&mut basis, d);
    }

    while let Some((lcm_degree, _, i, j)) = pairs.pop_first() {
        if corner.is_some_and(|d| lcm_degree >= d) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = match corner {
            Some(d) => reduce_truncated(&s, &basis, d),
            None => weak_normal_form(&s, &basis),
        };
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.leading_monomial().is_some_and(ExponentVector::is_one) {
            return vec![Polynomial::one(&ring)];
        }
        basis.push(h);
        let new = basis.len() - 1;
        for i in 0..new {
            pairs.insert(pair_key(&basis, i, new));
        }
        if let Some(d) = highest_corner(&basis) {
            if corner.is_none_or(|c| d < c) {
                corner = Some(d);
                truncate_all(&mut basis, d);
            }
        }
    }
    minimal(basis)
}

/// Keeps one element per minimal leading monomial.
fn minimal(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let lms: Vec<ExponentVector> = basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    basis
        .into_iter()
        .enumerate()
        .filter(|(i, _)| {
            !lms.iter().enumerate().any(|(j, m)| j != *i && m.divides(&lms[*i]) && (*m != lms[*i] || j < *i))
        })
        .map(|(_, g)| g)
        .collect()
}

/// `1 + ` the largest degree of a monomial outside the leading ideal of
/// `basis`, when that ideal has finite colength.
fn highest_corner(basis: &[Polynomial]) -> Option<u64> {
    let n = basis.first()?.ring().dimension();
    let lms: Vec<ExponentVector> = basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    let mut bounds: Vec<Option<u32>> = vec![None; n];
    for m in &lms {
        if let Some((i, a)) = m.pure_power() {
            bounds[i] = Some(bounds[i].map_or(a, |b| b.min(a)));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>()?;
    let stairs = enumerate_staircase(&bounds, &lms);
    Some(stairs.iter().map(ExponentVector::degree).max().map_or(0, |m| m + 1))
}

/// Truncates every element whose leading monomial lies below the corner;
/// the others are kept whole, as they still describe the leading ideal.
fn truncate_all(basis: &mut [Polynomial], corner: u64) {
    for g in basis.iter_mut() {
        if g.leading_monomial().is_some_and(|m| m.degree() < corner) {
            *g = g.truncated(corner);
        }
    }
}

/// Top reduction modulo `basis`, discarding terms of degree `>= corner`.
/// Terminates because only finitely many monomials remain.
fn reduce_truncated(p: &Polynomial, basis: &[Polynomial], corner: u64) -> Polynomial {
    let mut h = p.truncated(corner);
    while let Some(lm) = h.leading_monomial().cloned() {
        let Some(g) = basis
            .iter()
            .filter(|g| g.leading_monomial().unwrap().divides(&lm))
            .min_by_key(|g| g.num_terms())
        else {
            break;
        };
        let g_lm = g.leading_monomial().unwrap().clone();
        cancel_leading(&mut h, g, &g_lm);
        h = h.truncated(corner);
    }
    h
}

impl StandardBasis {
    fn finish(ideal: IdealPresentation, elements: Vec<Polynomial>) -> StandardBasis {
        let n = ideal.ring().dimension();
        let lms: Vec<ExponentVector> = elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let mut bounds: Vec<Option<u32>> = vec![None; n];
        for m in &lms {
            if let Some((i, a)) = m.pure_power() {
                bounds[i] = Some(bounds[i].map_or(a, |b| b.min(a)));
            }
        }
        let unit = lms.iter().any(ExponentVector::is_one);
        let (colength, staircase) = if unit {
            (Colength::Finite(0), Some(Vec::new()))
        } else if bounds.iter().all(Option::is_some) {
            let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
            let stairs = enumerate_staircase(&bounds, &lms);
            (Colength::Finite(stairs.len() as u64), Some(stairs))
        } else {
            (Colength::Infinite, None)
        };
        StandardBasis {
            ideal,
            elements,
            ordering: LocalOrdering::NegDegRevLex,
            colength,
            staircase,
            algebra: OnceLock::new(),
        }
    }

    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn ordering(&self) -> LocalOrdering {
        self.ordering
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.colength == Colength::Finite(0)
    }

    pub fn colength(&self) -> Colength {
        self.colength
    }

    /// Monomials outside the leading ideal, `1` first.
    pub fn staircase(&self) -> Option<&[ExponentVector]> {
        self.staircase.as_deref()
    }

    pub fn quotient_basis(&self) -> Result<QuotientBasis, LocalError> {
        match &self.staircase {
            Some(s) => Ok(QuotientBasis::new(self.ideal.clone(), s.clone())),
            None => Err(LocalError::InfiniteColength(self.ideal.to_string())),
        }
    }

    /// Multiplication tables of `O/I`; built on first use.
    pub fn algebra(&self) -> Result<&QuotientAlgebra, LocalError> {
        let stairs = self
            .staircase
            .as_ref()
            .ok_or_else(|| LocalError::InfiniteColength(self.ideal.to_string()))?;
        Ok(self
            .algebra
            .get_or_init(|| Arc::new(QuotientAlgebra::build(self.ideal.ring(), stairs.clone(), &self.elements))))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        match self.algebra() {
            Ok(a) => a.coordinates(p).iter().all(Zero::is_zero),
            Err(_) => weak_normal_form(p, &self.elements).is_zero(),
        }
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        match self.algebra() {
            Ok(a) => a.to_polynomial(&a.coordinates(p)),
            Err(_) => weak_normal_form(p, &self.elements),
        }
    }
}

/// Largest-term reduction of `p` modulo `elements`, discarding every term of
/// degree `>= corner`. Requires that all monomials of degree `corner` lie in
/// the ideal.
pub(crate) fn reduce_below_corner(p: &Polynomial, elements: &[Polynomial], corner: u64) -> Polynomial {
    let lms: Vec<ExponentVector> = elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    let mut h = p.truncated(corner);
    loop {
        let hit = h
            .terms()
            .rev()
            .find_map(|(e, c)| lms.iter().position(|m| m.divides(e)).map(|i| (e.clone(), c.clone(), i)));
        let Some((e, c, i)) = hit else {
            return h;
        };
        let g = &elements[i];
        let m = lms[i].quotient_of(&e).expect("divides");
        let factor = -(c / g.leading_coefficient().unwrap());
        h.add_scaled(&factor, &m, g);
        h = h.truncated(corner);
        debug_assert!(h.coefficient(&e).is_zero());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Ring, RingContext};

    fn ideal(ring: &Ring, gens: &[&str]) -> IdealPresentation {
        IdealPresentation::new(ring, gens.iter().map(|g| parse_poly(g, ring).unwrap())).unwrap()
    }

    #[test]
    fn truncated_and_untruncated_paths_agree() {
        let r = RingContext::new(["x", "y", "z"]).unwrap();
        for gens in [
            &["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"][..],
            &["x + y^2", "y^3 + z^2", "z^4 - x*y"],
            &["x*y", "y*z", "x*z", "x^3 + y^3 + z^3"],
            &["x^5", "y^2 - x^3", "z - x*y"],
        ] {
            let i = ideal(&r, gens);
            let monic: Vec<Polynomial> = i.generators().iter().map(Polynomial::monic).collect();
            let slow = StandardBasis::finish(i.clone(), mora(monic.clone()));
            let fast = standard_basis(&i);
            assert!(certified_truncated_basis(&monic, TRUNCATION_LIMIT).is_some(), "{i}");
            assert_eq!(fast.staircase(), slow.staircase(), "{i}");
        }
    }

    #[test]
    fn certificate_refuses_non_primary_ideals() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(certified_truncated_basis(i.generators(), TRUNCATION_LIMIT).is_none());
        assert_eq!(standard_basis(&i).colength(), Colength::Infinite);
    }

    #[test]
    fn basis_of_coordinate_ideal() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let b = standard_basis(&ideal(&r, &["x", "y"]));
        assert_eq!(b.elements(), &[parse_poly("x", &r).unwrap(), parse_poly("y", &r).unwrap()]);
        assert_eq!(b.colength(), Colength::Finite(1));
    }

    #[test]
    fn unit_factor_is_invisible() {
        let r = RingContext::new(["x"]).unwrap();
        let b = standard_basis(&ideal(&r, &["x - x^2"]));
        assert_eq!(b.leading_monomials(), vec![ExponentVector::new([1])]);
        assert_eq!(b.colength(), Colength::Finite(1));
        assert!(b.contains(&parse_poly("x", &r).unwrap()));
        assert!(b.normal_form(&parse_poly("x", &r).unwrap()).is_zero());
        assert!(!b.contains(&parse_poly("1", &r).unwrap()));
    }

    #[test]
    fn quadric_collection_ideal() {
        let r = RingContext::new(["x1", "x2", "x3"]).unwrap();
        let b = standard_basis(&ideal(&r, &["x1^2+x2^2+x3^2", "x2^2+x3^2", "x1^2+x3^2"]));
        let mut lms = b.leading_monomials();
        lms.sort();
        let mut expected = vec![
            ExponentVector::new([2, 0, 0]),
            ExponentVector::new([0, 2, 0]),
            ExponentVector::new([0, 0, 2]),
        ];
        expected.sort();
        assert_eq!(lms, expected);
        assert_eq!(b.colength(), Colength::Finite(8));
    }

    #[test]
    fn unit_ideal_has_colength_zero() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let b = standard_basis(&ideal(&r, &["1 + x", "y"]));
        assert!(b.is_unit_ideal());
        assert_eq!(b.staircase(), Some(&[][..]));
        // a unit can also appear only after reduction
        let b = standard_basis(&ideal(&r, &["x", "x + y^3 - 2"]));
        assert!(b.is_unit_ideal());
    }

    #[test]
    fn infinite_colength() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let b = standard_basis(&ideal(&r, &["x"]));
        assert_eq!(b.colength(), Colength::Infinite);
        assert!(b.quotient_basis().is_err());
        assert_eq!(standard_basis(&ideal(&r, &["0"])).colength(), Colength::Infinite);
    }

    #[test]
    fn generators_reduce_to_zero() {
        let r = RingContext::new(["x", "y", "z"]).unwrap();
        let i = ideal(&r, &["x^2 + y^3 - z*x", "y^2 - x*z + z^4", "z^3 + x*y - x^5"]);
        let b = standard_basis(&i);
        for g in i.generators() {
            assert!(b.contains(g));
        }
        let lms = b.leading_monomials();
        for (a, m) in lms.iter().enumerate() {
            for (c, n) in lms.iter().enumerate() {
                assert!(a == c || !m.divides(n));
            }
        }
    }

    #[test]
    fn tracked_division_identity() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let f = parse_poly("x - x^2", &r).unwrap();
        let xf = parse_poly("x - 2*x^2", &r).unwrap();
        let d = weak_normal_form_with_cofactors(&xf, std::slice::from_ref(&f));
        assert!(d.remainder.is_zero());
        assert!(!d.unit.constant_term().is_zero());
        assert_eq!(&d.unit * &xf, &d.cofactors[0] * &f);

        let gens = vec![parse_poly("x^2 + y^3", &r).unwrap(), parse_poly("y^2 - x^3*y", &r).unwrap()];
        let p = parse_poly("x^3*y + 2*x*y^2 + y^5 - x^4", &r).unwrap();
        let d = weak_normal_form_with_cofactors(&p, &gens);
        let rhs = &(&(&d.cofactors[0] * &gens[0]) + &(&d.cofactors[1] * &gens[1])) + &d.remainder;
        assert_eq!(&d.unit * &p, rhs);
    }
}
