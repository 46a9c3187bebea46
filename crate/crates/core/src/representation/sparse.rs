//! Null spaces of sparse linear systems, used for hom spaces.

use std::collections::BTreeMap;

use crate::linalg::{Field, Scalar};

type Row = BTreeMap<usize, Scalar>;

/// Basis of `{x : row · x = 0 for every row}` as dense vectors of length `n`.
/// Rows are lists of `(column, coefficient)`; repeated columns are summed.
pub(crate) fn null_space(field: Field, n: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Vec<Vec<Scalar>> {
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for raw in rows {
        let mut row: Row = BTreeMap::new();
        for (c, v) in raw {
            let e = row.entry(c).or_insert_with(|| field.zero());
            *e = e.add(&v);
        }
        row.retain(|_, v| !v.is_zero());
        let hits: Vec<usize> = row.keys().copied().filter(|c| pivots.contains_key(c)).collect();
        for p in hits {
            let Some(factor) = row.get(&p).cloned() else { continue };
            for (c, v) in &pivots[&p] {
                let e = row.entry(*c).or_insert_with(|| field.zero());
                *e = e.sub(&factor.mul(v));
            }
            row.retain(|_, v| !v.is_zero());
        }
        let Some((&lead, lv)) = row.iter().next() else { continue };
        let inv = lv.inv().expect("nonzero lead");
        for v in row.values_mut() {
            *v = v.mul(&inv);
        }
        for other in pivots.values_mut() {
            if let Some(factor) = other.get(&lead).cloned() {
                for (c, v) in &row {
                    let e = other.entry(*c).or_insert_with(|| field.zero());
                    *e = e.sub(&factor.mul(v));
                }
                other.retain(|_, v| !v.is_zero());
            }
        }
        pivots.insert(lead, row);
    }
    (0..n)
        .filter(|c| !pivots.contains_key(c))
        .map(|free| {
            let mut x = vec![field.zero(); n];
            x[free] = field.one();
            for (&p, row) in &pivots {
                if let Some(v) = row.get(&free) {
                    x[p] = v.neg();
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn agrees_with_dense_null_space() {
        let f = Field::Prime(7);
        let dense = Matrix::from_i64_rows(f, 5, &[vec![1, 2, 0, 0, 3], vec![0, 0, 1, 1, 1], vec![1, 2, 1, 1, 4]]);
        let rows = (0..dense.rows())
            .map(|r| (0..5).map(|c| (c, dense.get(r, c).clone())).collect())
            .collect();
        let basis = null_space(f, 5, rows);
        assert_eq!(basis.len(), 5 - dense.rank());
        for x in basis {
            let col = Matrix::from_scalars(f, 5, 1, x).unwrap();
            assert!(dense.mul(&col).is_zero());
        }
    }
}
