mod common;

use common::*;
use proptest::prelude::*;
use singidx::indices::index_elk;
use singidx::local::standard_basis;
use singidx::quadratic::{
    elk_functional_candidates, gram_matrix, inertia_by_charpoly, inertia_by_elimination, jacobian_determinant,
    signature, VectorFieldGerm,
};
use singidx::{IndexError, RingContext};

/// Fields `X_i = ±x_i^{a_i} + (sparse terms of degree 2..=4)` on up to three
/// variables.
fn field() -> impl Strategy<Value = VectorFieldGerm> {
    (1usize..=3).prop_flat_map(field_in)
}

fn field_in(n: usize) -> impl Strategy<Value = VectorFieldGerm> {
    (prop::collection::vec((1u32..=4, prop::bool::ANY), n), prop::collection::vec(sparse_poly(n, 2, 4, 2), n))
        .prop_map(move |(lead, rest)| {
            let r = RingContext::numbered(n);
            let comps = (0..n)
                .map(|i| {
                    let (a, neg) = lead[i];
                    &pure_power(&r, i, a, if neg { -1 } else { 1 }) + &build(&r, &rest[i])
                })
                .collect();
            VectorFieldGerm::new(&r, comps).unwrap()
        })
}

fn isolated(x: &VectorFieldGerm) -> Option<(i64, u64)> {
    match index_elk(x) {
        Ok(idx) => Some((idx.value, idx.colengths()[0])),
        Err(IndexError::NonIsolatedZero { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_bounded_by_colength_with_matching_parity(x in field()) {
        let Some((index, colength)) = isolated(&x) else { return Ok(()) };
        prop_assert!(index.unsigned_abs() <= colength);
        prop_assert_eq!((index - colength as i64).rem_euclid(2), 0);
    }

    #[test]
    fn every_admissible_functional_gives_the_same_signature(x in field()) {
        let Some((index, _)) = isolated(&x) else { return Ok(()) };
        let basis = standard_basis(&x.ideal());
        let quotient = basis.quotient_basis().unwrap();
        let jac = jacobian_determinant(&x);
        for l in elk_functional_candidates(&quotient, &basis, &jac).unwrap() {
            let g = gram_matrix(&quotient, &basis, &l).unwrap();
            let by_elimination = inertia_by_elimination(&g);
            prop_assert_eq!(by_elimination, inertia_by_charpoly(&g));
            prop_assert_eq!(by_elimination.2, 0);
            prop_assert_eq!(signature(&g).unwrap().signature, index);
        }
    }

    #[test]
    fn invariant_under_linear_coordinate_changes(
        (x, changes) in (1usize..=3).prop_flat_map(|n| (field_in(n), prop::collection::vec(invertible(n), 3))),
    ) {
        let Some((index, colength)) = isolated(&x) else { return Ok(()) };
        for a in changes {
            let y = x.change_coordinates(&a).unwrap();
            prop_assert_eq!(isolated(&y), Some((index, colength)));
        }
    }
}

#[test]
fn known_degrees() {
    let r = ring(&["x", "y"]);
    let field = |a: &str, b: &str| VectorFieldGerm::new(&r, vec![p(&r, a), p(&r, b)]).unwrap();
    assert_eq!(index_elk(&field("x", "-y")).unwrap().value, -1);
    assert_eq!(index_elk(&field("x^2 - y^2", "2*x*y")).unwrap().value, 2);
    assert_eq!(index_elk(&field("x^2 - y^2", "-2*x*y")).unwrap().value, -2);
    assert_eq!(index_elk(&field("x^2", "y")).unwrap().value, 0);
    assert_eq!(index_elk(&field("x^3", "y^3")).unwrap().value, 1);
    let r1 = ring(&["x"]);
    for (f, d) in [("x", 1), ("-x", -1), ("x^2", 0), ("x^3 + x^4", 1), ("-x^5", -1)] {
        let x = VectorFieldGerm::new(&r1, vec![p(&r1, f)]).unwrap();
        assert_eq!(index_elk(&x).unwrap().value, d, "{f}");
    }
}
