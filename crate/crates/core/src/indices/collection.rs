use super::formulas::minors_ideal;
use super::{measure, to_i64, GenericitySampler, ICISPresentation, Index, IndexError, OneFormGerm};
use crate::local::IdealPresentation;
use crate::poly::Polynomial;

/// A collection of 1-forms `{ω^(i)_j}` on an `n`-dimensional ICIS: group `i`
/// holds `n - k_i + 1` forms and the `k_i` sum to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionSpec {
    partition: Vec<usize>,
    groups: Vec<Vec<OneFormGerm>>,
}

impl CollectionSpec {
    /// Reads the partition off the group sizes: `k_i = n + 1 - |group i|`.
    pub fn new(v: &ICISPresentation, groups: Vec<Vec<OneFormGerm>>) -> Result<Self, IndexError> {
        let n = v.dimension();
        let partition = groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.is_empty() || g.len() > n {
                    return Err(IndexError::InvalidCollection(format!(
                        "group {i} has {} forms; each group needs between 1 and {n}",
                        g.len()
                    )));
                }
                Ok(n + 1 - g.len())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_partition(v, partition, groups)
    }

    pub fn with_partition(
        v: &ICISPresentation,
        partition: Vec<usize>,
        groups: Vec<Vec<OneFormGerm>>,
    ) -> Result<Self, IndexError> {
        let n = v.dimension();
        if partition.len() != groups.len() {
            return Err(IndexError::InvalidCollection(format!(
                "{} parts for {} groups of forms",
                partition.len(),
                groups.len()
            )));
        }
        if partition.contains(&0) || partition.iter().sum::<usize>() != n {
            return Err(IndexError::InvalidCollection(format!(
                "partition {partition:?} must consist of positive integers summing to {n}"
            )));
        }
        for (i, (k, g)) in partition.iter().zip(&groups).enumerate() {
            if g.len() != n + 1 - k {
                return Err(IndexError::InvalidCollection(format!(
                    "group {i} needs {} forms for k = {k}, got {}",
                    n + 1 - k,
                    g.len()
                )));
            }
            if g.iter().any(|w| w.ring() != v.ring()) {
                return Err(crate::local::LocalError::RingMismatch.into());
            }
        }
        Ok(CollectionSpec { partition, groups })
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn groups(&self) -> &[Vec<OneFormGerm>] {
        &self.groups
    }
}

/// For each group, the equations together with the `(N - k_i + 1)`-minors of
/// `(df_1; ...; df_k; ω^(i)_1; ...; ω^(i)_{n-k_i+1})`. Their sum is the ideal
/// whose colength is the index of the collection.
pub fn collection_ideals(v: &ICISPresentation, c: &CollectionSpec) -> Vec<IdealPresentation> {
    c.groups
        .iter()
        .map(|group| {
            let rows: Vec<Vec<Polynomial>> = group.iter().map(|w| w.coefficients().to_vec()).collect();
            minors_ideal(v.ring(), v.equations(), &rows)
        })
        .collect()
}

/// Index of a collection of 1-forms on an ICIS.
pub fn collection_index(v: &ICISPresentation, c: &CollectionSpec) -> Result<Index, IndexError> {
    let ideal = collection_ideals(v, c)
        .into_iter()
        .reduce(|a, b| a.sum(&b))
        .unwrap_or_else(|| v.ideal());
    let entry = measure("I_collection", ideal, |ideal| IndexError::CollectionNotIsolated { ideal })?;
    let partition: Vec<String> = c.partition.iter().map(usize::to_string).collect();
    Ok(Index::new(to_i64(entry.colength)?, vec![entry]).detail("partition", partition.join(" ")))
}

/// Local Chern obstruction: the index of the collection minus the index of a
/// generic collection of differentials of linear functions with the same
/// partition.
pub fn chern_obstruction_collection(
    v: &ICISPresentation,
    c: &CollectionSpec,
    sampler: &GenericitySampler,
) -> Result<Index, IndexError> {
    let own = collection_index(v, c)?;
    let ring = v.ring();
    let sampled = sampler.agreeing(|rng| {
        let groups = c
            .groups
            .iter()
            .map(|g| {
                (0..g.len())
                    .map(|_| OneFormGerm::new(ring, sampler.coefficients(rng, ring.dimension()).into_iter().map(|a| Polynomial::constant(ring, a)).collect()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        collection_index(v, &CollectionSpec::with_partition(v, c.partition.clone(), groups)?)
    })?;
    let generic = &sampled[0];
    let mut provenance = own.provenance;
    provenance.extend(generic.provenance.iter().cloned());
    Ok(Index::new(own.value - generic.value, provenance)
        .detail("collection_index", own.value)
        .detail("generic_index", generic.value))
}
