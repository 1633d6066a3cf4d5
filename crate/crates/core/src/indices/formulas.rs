use super::{measure, to_i64, GenericitySampler, ICISPresentation, Index, IndexError, OneFormGerm, PoleChain};
use crate::local::{weak_normal_form_with_cofactors, IdealPresentation};
use crate::poly::{maximal_minors, Polynomial, Ring};
use crate::quadratic::{
    elk_functional, gram_matrix, jacobian_determinant, signature, QuadraticError, VectorFieldGerm,
};
use crate::local::standard_basis;

/// `(f_1, ..., f_m)` plus the maximal minors of the matrix with rows
/// `df_1, ..., df_m, A`. With more rows than columns there are no minors.
fn equations_and_minors(ring: &Ring, equations: &[Polynomial], rows: &[Vec<Polynomial>]) -> IdealPresentation {
    let mut matrix: Vec<Vec<Polynomial>> = equations.iter().map(Polynomial::gradient).collect();
    matrix.extend(rows.iter().cloned());
    let minors = maximal_minors(&matrix);
    IdealPresentation::from_parts(ring, equations.iter().cloned().chain(minors))
}

fn check_form(v: &ICISPresentation, w: &OneFormGerm) -> Result<(), IndexError> {
    if v.ring() != w.ring() {
        return Err(crate::local::LocalError::RingMismatch.into());
    }
    Ok(())
}

/// Multiplicity of an isolated zero of a holomorphic vector field:
/// `dim O/(X_1, ..., X_N)`.
pub fn index_holomorphic_vf(x: &VectorFieldGerm) -> Result<Index, IndexError> {
    let entry = measure("J_X", x.ideal(), |ideal| IndexError::NonIsolatedZero { ideal })?;
    Ok(Index::new(to_i64(entry.colength)?, vec![entry]))
}

/// Local topological degree of a real field as the signature of the
/// Eisenbud–Levine–Khimshiashvili form.
pub fn index_elk(x: &VectorFieldGerm) -> Result<Index, IndexError> {
    let ideal = x.ideal();
    let basis = standard_basis(&ideal);
    let Some(colength) = basis.colength().finite() else {
        return Err(IndexError::NonIsolatedZero { ideal: ideal.to_string() });
    };
    let quotient = basis.quotient_basis()?;
    let jac = jacobian_determinant(x);
    let functional = elk_functional(&quotient, &basis, &jac).map_err(|e| match e {
        QuadraticError::DegenerateJacobian => IndexError::NotAlgebraicallyIsolated,
        other => other.into(),
    })?;
    let gram = gram_matrix(&quotient, &basis, &functional)?;
    let sig = signature(&gram)?;
    let entry = super::ProvenanceEntry { label: "J_X".into(), ideal, colength };
    let mut index = Index::new(sig.signature, vec![entry])
        .detail("positive", sig.positive)
        .detail("negative", sig.negative)
        .detail("zero", sig.zero)
        .detail("jacobian", &jac);
    index.gram = Some(gram);
    Ok(index)
}

/// The ideal whose colength is the GSV index of `ω` on `V`: the equations
/// and the `(k+1)`-minors of `(df_1; ...; df_k; ω)`.
pub fn gsv_ideal(v: &ICISPresentation, w: &OneFormGerm) -> Result<IdealPresentation, IndexError> {
    check_form(v, w)?;
    Ok(equations_and_minors(v.ring(), v.equations(), &[w.coefficients().to_vec()]))
}

/// GSV index of a holomorphic 1-form on an ICIS.
pub fn gsv_index_1form(v: &ICISPresentation, w: &OneFormGerm) -> Result<Index, IndexError> {
    let entry = measure("I_GSV", gsv_ideal(v, w)?, |ideal| IndexError::NotIsolatedOnIcis { ideal })?;
    Ok(Index::new(to_i64(entry.colength)?, vec![entry]))
}

/// Homological index of a holomorphic 1-form on an ICIS; it coincides with
/// the GSV index.
pub fn homological_index_1form_icis(v: &ICISPresentation, w: &OneFormGerm) -> Result<Index, IndexError> {
    gsv_index_1form(v, w)
}

/// `μ(f) = dim O/(∂f/∂x_1, ..., ∂f/∂x_N)`.
pub fn milnor_number_hypersurface(f: &Polynomial) -> Result<Index, IndexError> {
    let ideal = IdealPresentation::from_parts(f.ring(), f.gradient());
    let entry = measure("J_f", ideal, |ideal| IndexError::NonIsolatedSingularity { ideal })?;
    Ok(Index::new(to_i64(entry.colength)?, vec![entry]))
}

/// Milnor number of an ICIS by the Lê–Greuel chain
/// `μ(V_i) + μ(V_{i+1}) = ind_GSV(df_{i+1}; V_i)`, starting from `μ(V_0) = 0`.
pub fn milnor_number_icis(v: &ICISPresentation) -> Result<Index, IndexError> {
    let mut mu: i64 = 0;
    let mut provenance = Vec::new();
    let mut chain = Vec::new();
    for (i, f) in v.equations().iter().enumerate() {
        let ideal = equations_and_minors(v.ring(), &v.equations()[..i], &[f.gradient()]);
        let entry = measure(format!("chain[{i}]"), ideal, |ideal| IndexError::IcisChain { step: i, ideal })?;
        mu = to_i64(entry.colength)? - mu;
        if mu < 0 {
            return Err(IndexError::IcisChain { step: i, ideal: entry.ideal.to_string() });
        }
        chain.push(mu.to_string());
        provenance.push(entry);
    }
    Ok(Index::new(mu, provenance).detail("chain", chain.join(" ")))
}

/// Gómez-Mont's formula for the GSV index of a holomorphic vector field
/// tangent to the hypersurface `{f = 0}` in `C^{n+1}`.
///
/// With `X(f) = h f`, `J_X = (X_i)`, `J_1 = (h) + J_X`,
/// `J_2 = (f) + (∂f/∂x_i)` and `J_3 = (f) + J_X`, the index is
/// `dim O/J_X + dim O/J_1 + dim O/J_2` for even `n` and
/// `dim O/J_2 + dim O/J_3` for odd `n`.
pub fn gsv_index_vf_hypersurface(f: &Polynomial, x: &VectorFieldGerm) -> Result<Index, IndexError> {
    let ring = x.ring();
    if f.ring() != ring {
        return Err(crate::local::LocalError::RingMismatch.into());
    }
    let xf = x
        .components()
        .iter()
        .zip(f.gradient())
        .fold(Polynomial::zero(ring), |acc, (xi, df)| &acc + &(xi * &df));
    let division = weak_normal_form_with_cofactors(&xf, std::slice::from_ref(f));
    if !division.remainder.is_zero() {
        return Err(IndexError::NotTangent);
    }
    // unit * X(f) = a * f with unit invertible, so (h) = (a)
    let a = division.cofactors.into_iter().next().unwrap_or_else(|| Polynomial::zero(ring));
    let h = if division.unit == Polynomial::one(ring) {
        a.to_string()
    } else {
        format!("({a})/({})", division.unit)
    };

    let n = ring.dimension() - 1;
    let jx = x.ideal();
    let with = |g: &Polynomial, rest: &IdealPresentation| {
        IdealPresentation::from_parts(ring, std::iter::once(g.clone()).chain(rest.generators().iter().cloned()))
    };
    let j2 = with(f, &IdealPresentation::from_parts(ring, f.gradient()));
    let ambient = |ideal| IndexError::AmbientZeroNotIsolated { ideal };
    let provenance = if n.is_multiple_of(2) {
        vec![
            measure("J_X", jx.clone(), ambient)?,
            measure("J_1", with(&a, &jx), ambient)?,
            measure("J_2", j2, |ideal| IndexError::NonIsolatedSingularity { ideal })?,
        ]
    } else {
        let j3 = with(f, &jx);
        vec![
            measure("J_2", j2, |ideal| IndexError::NonIsolatedSingularity { ideal })?,
            measure("J_3", j3, ambient)?,
        ]
    };
    let value = provenance.iter().try_fold(0i64, |acc, p| Ok::<_, IndexError>(acc + to_i64(p.colength)?))?;
    Ok(Index::new(value, provenance).detail("h", h).detail("n", n))
}

/// Radial index of a 1-form on an ICIS: `ind_GSV(ω) - μ(V)`.
pub fn radial_index_1form_icis(v: &ICISPresentation, w: &OneFormGerm) -> Result<Index, IndexError> {
    let gsv = gsv_index_1form(v, w)?;
    let mu = milnor_number_icis(v)?;
    let mut provenance = gsv.provenance;
    provenance.extend(mu.provenance);
    Ok(Index::new(gsv.value - mu.value, provenance).detail("gsv", gsv.value).detail("milnor", mu.value))
}

/// Euler obstruction of `dg` on an ICIS:
/// `μ(V ∩ {g = 0}) - μ(V ∩ {ℓ = 0})` for a generic linear function `ℓ`.
pub fn euler_obstruction_of_function_icis(
    v: &ICISPresentation,
    g: &Polynomial,
    sampler: &GenericitySampler,
) -> Result<Index, IndexError> {
    let mu_g = milnor_number_icis(&v.intersect(g)?)?;
    let sampled = sampler.agreeing(|rng| {
        let l = sampler.linear_function(rng, v.ring());
        let mut index = milnor_number_icis(&v.intersect(&l)?)?;
        index.details.push(("l".into(), l.to_string()));
        Ok(index)
    })?;
    let mu_l = &sampled[0];
    let mut provenance = mu_g.provenance;
    provenance.extend(mu_l.provenance.iter().cloned());
    let forms: Vec<String> = sampled.iter().flat_map(|s| s.details.iter()).filter(|(k, _)| k == "l").map(|(_, l)| l.clone()).collect();
    Ok(Index::new(mu_g.value - mu_l.value, provenance)
        .detail("milnor_g", mu_g.value)
        .detail("milnor_l", mu_l.value)
        .detail("sampled_l", forms.join("; ")))
}

/// Index of `ω` with respect to the pole divisors:
/// `ν_0 - ν_1 + ... + (-1)^l ν_l`, where `ν_i` is the GSV colength on
/// `V ∩ D_1 ∩ ... ∩ D_i`. The partial intersections are assumed reduced;
/// this is not checked.
pub fn meromorphic_index(v: &ICISPresentation, w: &OneFormGerm, poles: &PoleChain) -> Result<Index, IndexError> {
    check_form(v, w)?;
    if poles.ring() != v.ring() {
        return Err(crate::local::LocalError::RingMismatch.into());
    }
    if v.codimension() + poles.len() > v.ring().dimension() {
        return Err(IndexError::InvalidInput(format!(
            "{} equations and {} pole sections exceed {} variables",
            v.codimension(),
            poles.len(),
            v.ring().dimension()
        )));
    }
    let mut equations = v.equations().to_vec();
    let mut provenance = Vec::new();
    let mut value = 0i64;
    for i in 0..=poles.len() {
        if i > 0 {
            equations.push(poles.sections()[i - 1].clone());
        }
        let ideal = equations_and_minors(v.ring(), &equations, &[w.coefficients().to_vec()]);
        let entry = measure(format!("nu[{i}]"), ideal, |ideal| IndexError::PoleChain { step: i, ideal })?;
        let nu = to_i64(entry.colength)?;
        value += if i % 2 == 0 { nu } else { -nu };
        provenance.push(entry);
    }
    Ok(Index::new(value, provenance))
}

pub(super) fn minors_ideal(ring: &Ring, equations: &[Polynomial], rows: &[Vec<Polynomial>]) -> IdealPresentation {
    equations_and_minors(ring, equations, rows)
}
