//! Gauss-Jordan elimination over the coefficient field.

use crate::exactalg::FieldElem;

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<FieldElem>),
    /// Rank of the coefficient matrix, smaller than the number of unknowns.
    Underdetermined(usize),
    /// Index of an input row that reduces to `0 = nonzero`.
    Inconsistent(usize),
}

fn weight(x: &FieldElem) -> (u32, usize) {
    (
        x.num_z().total_degree() + x.den_z().total_degree(),
        x.num_z().len() + x.den_z().len(),
    )
}

/// Solves `a x = b` exactly. Pivots are chosen with the smallest total
/// degree in each column to limit expression growth.
pub fn solve(a: &[Vec<FieldElem>], b: &[FieldElem]) -> Solution {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<(usize, Vec<FieldElem>, FieldElem)> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (r, v))| (i, r.clone(), v.clone()))
        .collect();
    let mut pivot_rows = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..n {
        let best = (pivot_rows..rows.len())
            .filter(|&r| !rows[r].1[col].is_zero())
            .min_by_key(|&r| weight(&rows[r].1[col]));
        let Some(p) = best else { continue };
        rows.swap(pivot_rows, p);
        let inv = rows[pivot_rows].1[col].inv().expect("nonzero pivot");
        {
            let row = &mut rows[pivot_rows];
            for x in row.1.iter_mut() {
                if !x.is_zero() {
                    *x = x.mul_ref(&inv);
                }
            }
            row.2 = row.2.mul_ref(&inv);
        }
        let (prow, prhs) = (rows[pivot_rows].1.clone(), rows[pivot_rows].2.clone());
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_rows || row.1[col].is_zero() {
                continue;
            }
            let f = row.1[col].clone();
            for (x, y) in row.1.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
            row.2 = row.2.sub_ref(&f.mul_ref(&prhs));
        }
        pivot_cols.push(col);
        pivot_rows += 1;
    }
    if let Some(bad) = rows[pivot_rows..].iter().find(|r| !r.2.is_zero()) {
        return Solution::Inconsistent(bad.0);
    }
    if pivot_rows < n {
        return Solution::Underdetermined(pivot_rows);
    }
    let mut x = vec![FieldElem::zero(); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = rows[r].2.clone();
    }
    Solution::Unique(x)
}
