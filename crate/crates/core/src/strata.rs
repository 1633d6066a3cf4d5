//! Möbius calculus on the poset of strata of a stratified germ.
//!
//! Strata `V_0, ..., V_q` are ordered by `i ≺ j` iff `V_i ⊂ closure(V_j)`.
//! Each comparable pair carries the index `n_ij` of a generic linear form on
//! the normal slice, with `n_ii = 1`. The radial index on the closure of a
//! stratum is the `n`-weighted sum of Euler obstructions of smaller strata;
//! inverting `n` on the incidence algebra recovers the obstructions from
//! radial indices.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("poset needs at least one stratum")]
    Empty,
    #[error("relation is not irreflexive at stratum {0}")]
    Reflexive(usize),
    #[error("relation is not antisymmetric between strata {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(usize, usize, usize),
    #[error("n_ii must be 1, found a different value at stratum {0}")]
    DiagonalNotOne(usize),
    #[error("slice index given for incomparable strata {0} and {1}")]
    SliceIndexOffRelation(usize, usize),
    #[error("missing `{field}` for stratum {stratum}")]
    MissingData { field: &'static str, stratum: usize },
    #[error("expected {expected} per-stratum values, got {got}")]
    DataLength { expected: usize, got: usize },
    #[error("poset has no unique maximal stratum")]
    NoUniqueTop,
    #[error("integer overflow")]
    Overflow,
}

/// Strata with their strict order and slice indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataPoset {
    names: Vec<String>,
    less: Vec<Vec<bool>>,
    n: Vec<Vec<i64>>,
}

impl StrataPoset {
    /// `relations` lists every strict comparison `(i, j, n_ij)` with `i ≺ j`.
    /// The relation must already be transitive.
    pub fn new(names: Vec<String>, relations: &[(usize, usize, i64)]) -> Result<Self, StrataError> {
        let q = names.len();
        if q == 0 {
            return Err(StrataError::Empty);
        }
        let mut less = vec![vec![false; q]; q];
        let mut n = vec![vec![0i64; q]; q];
        for i in 0..q {
            n[i][i] = 1;
        }
        for &(i, j, v) in relations {
            assert!(i < q && j < q, "stratum index out of range");
            if i == j {
                return Err(StrataError::Reflexive(i));
            }
            less[i][j] = true;
            n[i][j] = v;
        }
        for i in 0..q {
            for j in 0..q {
                if less[i][j] && less[j][i] {
                    return Err(StrataError::NotAntisymmetric(i.min(j), i.max(j)));
                }
                for k in 0..q {
                    if less[i][j] && less[j][k] && !less[i][k] {
                        return Err(StrataError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(StrataPoset { names, less, n })
    }

    /// Poset from a full matrix of slice indices: `n[i][j] != 0` for `i ≠ j`
    /// is read as `i ≺ j`.
    pub fn from_matrix(names: Vec<String>, less: Vec<Vec<bool>>, n: Vec<Vec<i64>>) -> Result<Self, StrataError> {
        let q = names.len();
        let mut relations = Vec::new();
        for i in 0..q {
            for j in 0..q {
                if i != j && less[i][j] {
                    relations.push((i, j, n[i][j]));
                } else if i != j && n[i][j] != 0 {
                    return Err(StrataError::SliceIndexOffRelation(i, j));
                }
            }
        }
        let p = Self::new(names, &relations)?;
        if let Some(i) = (0..q).find(|&i| n[i][i] != 1) {
            return Err(StrataError::DiagonalNotOne(i));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn less_eq(&self, i: usize, j: usize) -> bool {
        i == j || self.less[i][j]
    }

    /// `n_ij` for `i ⪯ j`, zero elsewhere.
    pub fn n_matrix(&self) -> &[Vec<i64>] {
        &self.n
    }

    pub fn n(&self, i: usize, j: usize) -> i64 {
        self.n[i][j]
    }

    /// Same order, different slice indices.
    pub fn with_n_matrix(&self, n: Vec<Vec<i64>>) -> Result<Self, StrataError> {
        Self::from_matrix(self.names.clone(), self.less.clone(), n)
    }

    /// The unique stratum above every other one.
    pub fn top(&self) -> Result<usize, StrataError> {
        let q = self.len();
        let maximal: Vec<usize> = (0..q).filter(|&i| (0..q).all(|j| !self.less[i][j])).collect();
        match maximal[..] {
            [t] if (0..q).all(|i| self.less_eq(i, t)) => Ok(t),
            _ => Err(StrataError::NoUniqueTop),
        }
    }

    /// Strata sorted so that `i ≺ j` implies `i` comes first.
    fn linear_extension(&self) -> Vec<usize> {
        let q = self.len();
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by_key(|&i| (0..q).filter(|&j| self.less[j][i]).count());
        order
    }
}

/// The Möbius inverse `m` of `n` on the incidence algebra:
/// `sum_{i ⪯ j ⪯ k} n_ij m_jk = δ_ik`, with `m_ij = 0` off the relation.
pub fn mobius_inverse(poset: &StrataPoset) -> Result<Vec<Vec<i64>>, StrataError> {
    let q = poset.len();
    let order = poset.linear_extension();
    let mut m = vec![vec![0i64; q]; q];
    for k in 0..q {
        m[k][k] = 1;
        // m_ik = -sum_{i ≺ j ⪯ k} n_ij m_jk, filled from k downward
        for &i in order.iter().rev() {
            if !poset.less[i][k] {
                continue;
            }
            let mut acc = 0i64;
            for j in 0..q {
                if poset.less[i][j] && poset.less_eq(j, k) {
                    let t = poset.n[i][j].checked_mul(m[j][k]).ok_or(StrataError::Overflow)?;
                    acc = acc.checked_add(t).ok_or(StrataError::Overflow)?;
                }
            }
            m[i][k] = acc.checked_neg().ok_or(StrataError::Overflow)?;
        }
    }
    debug_assert!(incidence_product(poset, poset.n_matrix(), &m).is_some_and(|p| is_identity(&p)));
    Ok(m)
}

/// `(a * b)_ik = sum_{i ⪯ j ⪯ k} a_ij b_jk`.
pub fn incidence_product(poset: &StrataPoset, a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let q = poset.len();
    let mut out = vec![vec![0i64; q]; q];
    for i in 0..q {
        for k in 0..q {
            if !poset.less_eq(i, k) {
                continue;
            }
            let mut acc = 0i64;
            for j in 0..q {
                if poset.less_eq(i, j) && poset.less_eq(j, k) {
                    acc = acc.checked_add(a[i][j].checked_mul(b[j][k])?)?;
                }
            }
            out[i][k] = acc;
        }
    }
    Some(out)
}

pub fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
}

/// Per-stratum invariants consumed by the formulas below; every field is
/// optional and checked by the operation that needs it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StratumIndexData {
    /// Index of a generic form on the normal slice of `V` at the stratum.
    pub n: Vec<Option<i64>>,
    /// Euler obstruction of the form on the closure of the stratum.
    pub eu: Vec<Option<i64>>,
    /// Radial index of the form on the closure of the stratum.
    pub rad: Vec<Option<i64>>,
    /// Euler characteristic of the Milnor fibre intersected with the stratum.
    pub chi: Vec<Option<i64>>,
    /// Euler obstruction of `V` along the stratum.
    pub eu_v: Vec<Option<i64>>,
}

impl StratumIndexData {
    pub fn empty(q: usize) -> Self {
        StratumIndexData {
            n: vec![None; q],
            eu: vec![None; q],
            rad: vec![None; q],
            chi: vec![None; q],
            eu_v: vec![None; q],
        }
    }

    fn required(values: &[Option<i64>], field: &'static str, q: usize) -> Result<Vec<i64>, StrataError> {
        if values.len() != q {
            return Err(StrataError::DataLength { expected: q, got: values.len() });
        }
        values
            .iter()
            .enumerate()
            .map(|(stratum, v)| v.ok_or(StrataError::MissingData { field, stratum }))
            .collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> Result<i64, StrataError> {
    a.iter().zip(b).try_fold(0i64, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|t| acc.checked_add(t)).ok_or(StrataError::Overflow)
    })
}

/// `ind_rad(ω; V, 0) = sum_i n_i · Eu_{closure(V_i), 0} ω`.
pub fn radial_from_obstructions(poset: &StrataPoset, data: &StratumIndexData) -> Result<i64, StrataError> {
    let q = poset.len();
    let n = StratumIndexData::required(&data.n, "n", q)?;
    let eu = StratumIndexData::required(&data.eu, "eu", q)?;
    dot(&n, &eu)
}

/// Radial indices on the closure of every stratum from the Euler
/// obstructions: `rad_k = sum_{j ⪯ k} n_jk Eu_j`.
pub fn radial_indices_of_closures(poset: &StrataPoset, eu: &[i64]) -> Result<Vec<i64>, StrataError> {
    let q = poset.len();
    if eu.len() != q {
        return Err(StrataError::DataLength { expected: q, got: eu.len() });
    }
    (0..q)
        .map(|k| {
            let col: Vec<i64> = (0..q).map(|j| if poset.less_eq(j, k) { poset.n[j][k] } else { 0 }).collect();
            dot(&col, eu)
        })
        .collect()
}

/// `Eu_{V,0} ω = sum_i m_iq · ind_rad(ω; closure(V_i), 0)` with `q` the top
/// stratum.
pub fn obstruction_from_radial(poset: &StrataPoset, data: &StratumIndexData) -> Result<i64, StrataError> {
    let q = poset.len();
    let top = poset.top()?;
    let rad = StratumIndexData::required(&data.rad, "rad", q)?;
    let m = mobius_inverse(poset)?;
    let col: Vec<i64> = (0..q).map(|i| m[i][top]).collect();
    dot(&col, &rad)
}

/// `Eu_{V,0} f = Eu_V(0) - sum_i χ(M_f ∩ V_i) · Eu_V(V_i)`, summed over all
/// listed strata.
pub fn bmps_function_obstruction(
    poset: &StrataPoset,
    data: &StratumIndexData,
    eu_v_origin: i64,
) -> Result<i64, StrataError> {
    let q = poset.len();
    let chi = StratumIndexData::required(&data.chi, "chi", q)?;
    let eu_v = StratumIndexData::required(&data.eu_v, "euv", q)?;
    eu_v_origin.checked_sub(dot(&chi, &eu_v)?).ok_or(StrataError::Overflow)
}
