mod common;

use common::*;
use proptest::prelude::*;
use singidx::indices::{
    collection_index, gsv_index_1form, homological_index_1form_icis, index_elk, index_holomorphic_vf,
    meromorphic_index, milnor_number_hypersurface, milnor_number_icis, radial_index_1form_icis, CollectionSpec,
    ICISPresentation, OneFormGerm, PoleChain,
};
use singidx::quadratic::VectorFieldGerm;
use singidx::{IndexError, Polynomial, Rational, Ring, RingContext};

fn icis(r: &Ring, eqs: &[&str]) -> ICISPresentation {
    ICISPresentation::new(r, eqs.iter().map(|e| p(r, e)).collect()).unwrap()
}

fn form(r: &Ring, coeffs: &[&str]) -> OneFormGerm {
    OneFormGerm::new(r, coeffs.iter().map(|c| p(r, c)).collect()).unwrap()
}

/// ICIS germs paired with 1-forms having an isolated singular point on them.
fn corpus() -> Vec<(ICISPresentation, OneFormGerm)> {
    let r2 = ring(&["x", "y"]);
    let r3 = ring(&["x", "y", "z"]);
    let r4 = ring(&["x", "y", "z", "w"]);
    vec![
        (ICISPresentation::smooth(&r2), form(&r2, &["x", "y"])),
        (ICISPresentation::smooth(&r2), form(&r2, &["x^2", "y^3"])),
        (ICISPresentation::smooth(&r3), form(&r3, &["x + y^2", "y^3", "z^2"])),
        (icis(&r2, &["x*y"]), form(&r2, &["1", "1"])),
        (icis(&r2, &["x^2 - y^3"]), form(&r2, &["0", "1"])),
        (icis(&r3, &["x^2 + y^2 + z^2"]), form(&r3, &["0", "0", "1"])),
        (icis(&r3, &["x^2 + y^2 + z^2"]), form(&r3, &["1", "2", "3"])),
        (icis(&r3, &["x^3 + y^3 + z^3"]), form(&r3, &["1", "-1", "2"])),
        (icis(&r3, &["x*y + z^3"]), form(&r3, &["0", "0", "1"])),
        (icis(&r4, &["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"]), form(&r4, &["1", "1", "1", "1"])),
    ]
}

#[test]
fn meromorphic_without_poles_is_gsv() {
    for (v, w) in corpus() {
        let m = meromorphic_index(&v, &w, &PoleChain::empty(v.ring())).unwrap();
        assert_eq!(m.value, gsv_index_1form(&v, &w).unwrap().value, "{:?}", v.equations());
    }
}

#[test]
fn single_form_collection_is_gsv() {
    for (v, w) in corpus() {
        let c = CollectionSpec::new(&v, vec![vec![w.clone()]]).unwrap();
        assert_eq!(c.partition(), &[v.dimension()]);
        assert_eq!(collection_index(&v, &c).unwrap().value, gsv_index_1form(&v, &w).unwrap().value);
    }
}

#[test]
fn gsv_on_smooth_germ_is_the_vector_field_index() {
    for (v, w) in corpus().into_iter().filter(|(v, _)| v.codimension() == 0) {
        let x = VectorFieldGerm::new(v.ring(), w.coefficients().to_vec()).unwrap();
        assert_eq!(gsv_index_1form(&v, &w).unwrap().value, index_holomorphic_vf(&x).unwrap().value);
    }
}

#[test]
fn homological_index_is_gsv() {
    for (v, w) in corpus() {
        assert_eq!(homological_index_1form_icis(&v, &w).unwrap(), gsv_index_1form(&v, &w).unwrap());
    }
}

#[test]
fn milnor_of_hypersurface_matches_the_chain() {
    let r = ring(&["x", "y", "z"]);
    for f in ["x^2 + y^2 + z^2", "x^3 + y^4 + z^2", "x*y*z + x^4 + y^4 + z^4", "x^2*y + y^4 + z^2"] {
        let f = p(&r, f);
        let chain = milnor_number_icis(&ICISPresentation::new(&r, vec![f.clone()]).unwrap()).unwrap();
        assert_eq!(chain.value, milnor_number_hypersurface(&f).unwrap().value);
    }
}

#[test]
fn thom_sebastiani_and_product_fields() {
    let r = ring(&["x", "y", "z"]);
    // separated variables multiply Milnor numbers and vector field indices
    for (f, g, mf, mg) in [("x^3", "y^4 + z^2", 2, 3), ("x^4", "y^2*z + z^5", 3, 6), ("x^2", "y^3 + z^3", 1, 4)] {
        let sum = &p(&r, f) + &p(&r, g);
        assert_eq!(milnor_number_hypersurface(&sum).unwrap().value, mf * mg);
    }
    let x = VectorFieldGerm::new(&r, vec![p(&r, "x^3"), p(&r, "y^2 + z^3"), p(&r, "y*z")]).unwrap();
    assert_eq!(index_holomorphic_vf(&x).unwrap().value, 3 * 5);
    let real = VectorFieldGerm::new(&r, vec![p(&r, "-x^3"), p(&r, "y^2 - z^2"), p(&r, "2*y*z")]).unwrap();
    assert_eq!(index_elk(&real).unwrap().value, -2);
}

/// Substitutes `x_j = -(sum_{i != j} c_i x_i) / c_j` into `f`, landing in a
/// ring without `x_j`.
fn restrict_to_hyperplane(f: &Polynomial, c: &[Rational], j: usize, target: &Ring) -> Polynomial {
    let n = c.len();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let k = |i: usize| if i < j { i } else { i - 1 };
            if i != j {
                Polynomial::variable(target, k(i))
            } else {
                let coeffs: Vec<Rational> =
                    (0..n).filter(|&i| i != j).map(|i| -&c[i] / &c[j]).collect();
                Polynomial::linear_form(target, &coeffs)
            }
        })
        .collect();
    f.compose(&images)
}

fn hyperplane_milnor(v: &ICISPresentation, c: &[Rational]) -> Result<i64, IndexError> {
    let j = c.iter().position(|x| !num_traits::Zero::is_zero(x)).unwrap();
    let target = RingContext::numbered(v.ring().dimension() - 1);
    let eqs = v.equations().iter().map(|f| restrict_to_hyperplane(f, c, j, &target)).collect();
    Ok(milnor_number_icis(&ICISPresentation::new(&target, eqs)?)?.value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radial_index_of_a_linear_form_is_the_milnor_number_of_the_section(
        which in 0usize..3,
        c in prop::collection::vec(-5i64..=5, 4),
    ) {
        let (v, n) = match which {
            0 => (icis(&ring(&["x", "y", "z"]), &["x^2 + y^2 + z^2"]), 3),
            1 => (icis(&ring(&["x", "y", "z"]), &["x^3 + y^3 + z^3"]), 3),
            _ => (icis(&ring(&["x", "y", "z", "w"]), &["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"]), 4),
        };
        let c: Vec<Rational> = c[..n].iter().map(|&k| q(k)).collect();
        prop_assume!(c.iter().any(|x| !num_traits::Zero::is_zero(x)));
        let dl = OneFormGerm::new(v.ring(), c.iter().map(|k| Polynomial::constant(v.ring(), k.clone())).collect()).unwrap();
        match (radial_index_1form_icis(&v, &dl), hyperplane_milnor(&v, &c)) {
            (Ok(rad), Ok(mu)) => prop_assert_eq!(rad.value, mu),
            (Err(_), Err(_)) => {}
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        }
    }

    #[test]
    fn gsv_is_invariant_under_linear_coordinate_changes(k in 0usize..10, a in invertible(3)) {
        let (v, w) = corpus().swap_remove(k);
        prop_assume!(v.ring().dimension() == 3);
        let before = gsv_index_1form(&v, &w).unwrap().value;
        let after = gsv_index_1form(&v.change_coordinates(&a).unwrap(), &w.change_coordinates(&a).unwrap()).unwrap();
        prop_assert_eq!(after.value, before);
    }

    #[test]
    fn milnor_number_ignores_the_order_of_equations(swap in any::<bool>(), a in invertible(4)) {
        let r = ring(&["x", "y", "z", "w"]);
        let mut eqs = vec![p(&r, "x^2 + y^2 + z^2 + w^2"), p(&r, "x^2 + 2*y^2 + 3*z^2 + 4*w^2 + x^3")];
        if swap {
            eqs.reverse();
        }
        let v = ICISPresentation::new(&r, eqs).unwrap().change_coordinates(&a).unwrap();
        let mut reversed = v.equations().to_vec();
        reversed.reverse();
        let w = ICISPresentation::new(&r, reversed).unwrap();
        match (milnor_number_icis(&v), milnor_number_icis(&w)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.value, b.value),
            (Err(IndexError::IcisChain { .. }), _) | (_, Err(IndexError::IcisChain { .. })) => {}
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        }
    }
}

#[test]
fn cross_identity_on_fixed_sections() {
    let v = icis(&ring(&["x", "y", "z"]), &["x^2 + y^2 + z^2"]);
    let c = [q(1), q(2), q(3)];
    let dl = OneFormGerm::new(v.ring(), c.iter().map(|k| Polynomial::constant(v.ring(), k.clone())).collect()).unwrap();
    assert_eq!(radial_index_1form_icis(&v, &dl).unwrap().value, 1);
    assert_eq!(hyperplane_milnor(&v, &c).unwrap(), 1);
}
