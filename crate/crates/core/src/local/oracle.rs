//! Colength by linear algebra on truncated polynomial spaces.
//!
//! For `d = 2, 3, ...` the oracle computes
//! `dim O/(I + m^d) = dim P_{<d} - rank{ trunc_{<d}(x^a g) }` with exact
//! integer elimination. The sequence is nondecreasing and bounded by
//! `dim O/I`; once `I + m^d = I + m^{d+1}`, Nakayama's lemma gives
//! `m^d ⊆ I` and the value is the colength. Only polynomial multiplication
//! and truncation are shared with the rest of the crate.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IdealPresentation;
use crate::poly::{ExponentVector, Polynomial};

pub const DEFAULT_ORACLE_CAP: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleColength {
    Finite(u64),
    /// No stabilization up to the truncation degree `cap`.
    Inconclusive { cap: u32 },
}

impl fmt::Display for OracleColength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleColength::Finite(d) => write!(f, "{d}"),
            OracleColength::Inconclusive { cap } => write!(f, "inconclusive at cap {cap}"),
        }
    }
}

/// Truncation-degree colength oracle. Stabilization must hold over two
/// consecutive steps (`dim_d = dim_{d+1} = dim_{d+2}`, all `d + 2 <= cap`).
pub fn colength_truncation_oracle(ideal: &IdealPresentation, cap: u32) -> OracleColength {
    let mut history: Vec<u64> = Vec::new();
    for d in 2..=cap {
        history.push(truncated_quotient_dimension(ideal, u64::from(d)));
        if let [.., a, b, c] = history[..] {
            if a == b && b == c {
                return OracleColength::Finite(a);
            }
        }
    }
    OracleColength::Inconclusive { cap }
}

/// `dim O/(I + m^d)`.
pub(crate) fn truncated_quotient_dimension(ideal: &IdealPresentation, d: u64) -> u64 {
    let n = ideal.ring().dimension();
    let columns = monomials_below(n, d);
    let index: HashMap<&ExponentVector, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut echelon = Echelon::default();
    for g in ideal.generators() {
        let g = integral(g);
        let order = g.order().unwrap_or(0);
        for m in &columns {
            if m.degree() + order >= d {
                continue;
            }
            let shifted = g.mul_monomial(m).truncated(d);
            let mut row: Vec<(usize, BigInt)> = shifted
                .terms()
                .map(|(e, c)| (index[e], c.numer().clone()))
                .collect();
            row.sort_by_key(|(i, _)| *i);
            echelon.insert(row);
        }
    }
    columns.len() as u64 - echelon.rank() as u64
}

/// All exponent vectors of total degree `< d`, lowest degree first.
fn monomials_below(n: usize, d: u64) -> Vec<ExponentVector> {
    let mut out = vec![ExponentVector::one(n)];
    let mut frontier = out.clone();
    for _ in 1..d {
        let mut next = Vec::new();
        for m in &frontier {
            // Raise only variables at or after the last nonzero one, so each
            // monomial is produced exactly once.
            let last = (0..n).rev().find(|&i| m.get(i) > 0).unwrap_or(0);
            for i in last..n {
                next.push(m.raised(i));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Scales `p` to have integer coefficients.
fn integral(p: &Polynomial) -> Polynomial {
    let lcm = p
        .terms()
        .fold(BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
    p.scale(&crate::poly::Rational::from_integer(lcm))
}

/// Row echelon form over the integers, rows kept primitive.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, Vec<(usize, BigInt)>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: Vec<(usize, BigInt)>) {
        loop {
            let Some(lead) = row.first().map(|(c, _)| *c) else {
                return;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                make_primitive(&mut row);
                self.pivots.insert(lead, row);
                return;
            };
            row = eliminate(&row, pivot);
        }
    }
}

/// `p * row - r * pivot` with the leading entries cancelled, made primitive.
fn eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let r = &row[0].1;
    let p = &pivot[0].1;
    let g = r.gcd(p);
    let (fr, fp) = (p / &g, r / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, val) = if take_row {
            i += 1;
            (row[i - 1].0, &fr * &row[i - 1].1)
        } else if take_pivot {
            j += 1;
            (pivot[j - 1].0, -(&fp * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (row[i - 1].0, &fr * &row[i - 1].1 - &fp * &pivot[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    let g = g.abs();
    for (_, v) in row.iter_mut() {
        *v /= &g;
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
    fn monomial_enumeration_counts() {
        // C(n + d - 1, n) monomials of degree < d
        assert_eq!(monomials_below(3, 4).len(), 20);
        assert_eq!(monomials_below(2, 5).len(), 15);
        assert_eq!(monomials_below(1, 7).len(), 7);
    }

    #[test]
    fn oracle_examples() {
        let r = RingContext::new(["x", "y"]).unwrap();
        assert_eq!(colength_truncation_oracle(&ideal(&r, &["x^2", "y^2"]), 8), OracleColength::Finite(4));
        let r1 = RingContext::new(["x"]).unwrap();
        assert_eq!(colength_truncation_oracle(&ideal(&r1, &["x - x^2"]), 8), OracleColength::Finite(1));
        let r3 = RingContext::new(["x1", "x2", "x3"]).unwrap();
        assert_eq!(
            colength_truncation_oracle(&ideal(&r3, &["x1^2+x2^2+x3^2", "x2^2+x3^2", "x1^2+x3^2"]), 10),
            OracleColength::Finite(8)
        );
    }

    #[test]
    fn oracle_edge_cases() {
        let r = RingContext::new(["x", "y"]).unwrap();
        assert_eq!(colength_truncation_oracle(&ideal(&r, &["x"]), 12), OracleColength::Inconclusive { cap: 12 });
        assert_eq!(colength_truncation_oracle(&ideal(&r, &["2 + x", "y"]), 6), OracleColength::Finite(0));
        // stabilization needs three truncation degrees
        assert_eq!(colength_truncation_oracle(&ideal(&r, &["x", "y"]), 3), OracleColength::Inconclusive { cap: 3 });
        assert_eq!(colength_truncation_oracle(&ideal(&r, &["x", "y"]), 4), OracleColength::Finite(1));
    }

    #[test]
    fn truncated_dimensions_are_monotone() {
        let r = RingContext::new(["x", "y"]).unwrap();
        let i = ideal(&r, &["x^3 - y^2", "x*y"]);
        let dims: Vec<u64> = (1..9).map(|d| truncated_quotient_dimension(&i, d)).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*dims.last().unwrap(), 5);
    }
}
