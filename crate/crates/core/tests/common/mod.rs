#![allow(dead_code)]

use proptest::prelude::*;
use singidx::poly::ExponentVector;
use singidx::{Polynomial, Rational, RationalMatrix, Ring, RingContext};

pub fn ring(vars: &[&str]) -> Ring {
    RingContext::new(vars.iter().copied()).unwrap()
}

pub fn p(r: &Ring, s: &str) -> Polynomial {
    singidx::parse_poly(s, r).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Sparse polynomial with up to `terms` terms of total degree in
/// `lo..=hi` and coefficients in `-3..=3`.
pub fn sparse_poly(n: usize, lo: u32, hi: u32, terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..=hi, n), -3i64..=3), 0..=terms).prop_map(move |ts| {
        ts.into_iter()
            .filter(|(e, c)| {
                let d: u32 = e.iter().sum();
                *c != 0 && (lo..=hi).contains(&d)
            })
            .collect()
    })
}

pub fn build(r: &Ring, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(r, terms.iter().map(|(e, c)| (ExponentVector::new(e.clone()), q(*c))))
}

pub fn pure_power(r: &Ring, i: usize, a: u32, sign: i64) -> Polynomial {
    let mut e = vec![0u32; r.dimension()];
    e[i] = a;
    Polynomial::monomial(r, ExponentVector::new(e), q(sign))
}

/// Invertible integer matrix with entries in `-2..=2`.
pub fn invertible(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| {
            RationalMatrix::from_rows((0..n).map(|i| (0..n).map(|j| q(v[i * n + j])).collect()).collect())
        })
        .prop_filter("singular", |m| !num_traits::Zero::is_zero(&m.determinant()))
}
