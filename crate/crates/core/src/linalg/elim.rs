use std::collections::BTreeMap;

use super::{LinalgError, SqMat};
use crate::scalars::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Reduced row echelon form with respect to a caller-chosen column priority.
#[derive(Debug, Clone)]
pub struct RowReduction {
    /// Nonzero rows; `rows[k]` has a unit coefficient at `pivots[k]` and zero at
    /// every other pivot column.
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

fn axpy(target: &mut SparseRow, factor: &Scalar, source: &SparseRow) {
    for (c, v) in source {
        let p = factor * v;
        match target.get_mut(c) {
            Some(t) => {
                *t = &*t + &p;
                if t.is_zero() {
                    target.remove(c);
                }
            }
            None => {
                target.insert(*c, p);
            }
        }
    }
}

/// Gauss-Jordan elimination. Columns are tried as pivots in `col_order`;
/// columns absent from `col_order` never become pivots.
pub fn row_reduce(mut rows: Vec<SparseRow>, col_order: &[usize]) -> RowReduction {
    rows.retain(|r| !r.is_empty());
    let mut done: Vec<SparseRow> = Vec::new();
    let mut pivots = Vec::new();
    for &col in col_order {
        let best = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&col).map(|v| (i, v.complexity() + r.len())))
            .min_by_key(|&(_, w)| w)
            .map(|(i, _)| i);
        let Some(i) = best else { continue };
        let mut prow = rows.swap_remove(i);
        let inv = prow[&col].inv().expect("pivot is nonzero");
        for v in prow.values_mut() {
            *v = &*v * &inv;
        }
        for r in rows.iter_mut().chain(done.iter_mut()) {
            if let Some(f) = r.get(&col).cloned() {
                axpy(r, &-f, &prow);
            }
        }
        rows.retain(|r| !r.is_empty());
        done.push(prow);
        pivots.push(col);
    }
    RowReduction { rows: done, pivots }
}

pub fn inverse(m: &SqMat) -> Result<SqMat, LinalgError> {
    let n = m.dim();
    let rows: Vec<SparseRow> = (1..=n)
        .map(|r| {
            let mut row = m.row(r).clone();
            row.insert(n + r, Scalar::one());
            row
        })
        .collect();
    let order: Vec<usize> = (1..=n).collect();
    let red = row_reduce(rows, &order);
    if red.pivots.len() < n {
        return Err(LinalgError::Singular);
    }
    let mut out = SqMat::zeros(n);
    for (row, piv) in red.rows.iter().zip(&red.pivots) {
        for (c, v) in row.range(n + 1..) {
            out.set(*piv, c - n, v.clone());
        }
    }
    Ok(out)
}

pub fn rank(m: &SqMat) -> usize {
    let rows: Vec<SparseRow> = (1..=m.dim()).map(|r| m.row(r).clone()).collect();
    let order: Vec<usize> = (1..=m.dim()).collect();
    row_reduce(rows, &order).pivots.len()
}
