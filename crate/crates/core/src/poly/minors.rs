use super::Polynomial;

/// All maximal minors of an `r x N` polynomial matrix (`r <= N`), one per
/// increasing column subset, in lexicographic order of the subsets.
///
/// The expansion runs row by row over column subsets, so every minor of
/// the matrix is computed once and shared.
pub fn maximal_minors(rows: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let r = rows.len();
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let n = first.len();
    assert!(rows.iter().all(|row| row.len() == n), "ragged matrix");
    assert!(n <= 31, "too many columns");
    if r > n {
        return Vec::new();
    }
    let ring = first[0].ring().clone();

    // layer[t] maps a column subset (bitmask) of size t to the minor built
    // from the first t rows on those columns.
    let mut layer: Vec<(u32, Polynomial)> = vec![(0, Polynomial::one(&ring))];
    for row in rows {
        let mut next: std::collections::BTreeMap<u32, Polynomial> = std::collections::BTreeMap::new();
        for (mask, minor) in &layer {
            if minor.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let mut term = entry * minor;
                if inversions % 2 == 1 {
                    term = -term;
                }
                let slot = next.entry(mask | (1 << c)).or_insert_with(|| Polynomial::zero(&ring));
                *slot = &*slot + &term;
            }
        }
        layer = next.into_iter().collect();
    }

    let lookup: std::collections::HashMap<u32, Polynomial> = layer.into_iter().collect();
    itertools::Itertools::combinations(0..n, r)
        .map(|cols| {
            let mask = cols.iter().fold(0u32, |m, &c| m | (1 << c));
            lookup.get(&mask).cloned().unwrap_or_else(|| Polynomial::zero(&ring))
        })
        .collect()
}

/// Determinant of a square polynomial matrix.
pub fn determinant(rows: &[Vec<Polynomial>]) -> Polynomial {
    assert!(rows.iter().all(|row| row.len() == rows.len()), "matrix must be square");
    maximal_minors(rows).pop().expect("square matrix has one maximal minor")
}
