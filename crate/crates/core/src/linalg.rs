//! Exact Gaussian elimination over a number field.
//!
//! Matrices are lists of rows of `FieldElement`.

use crate::field::{Field, FieldElement};

pub type Matrix = Vec<Vec<FieldElement>>;

/// Reduced row echelon form. Returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<FieldElement>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..ncols {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<FieldElement>]) -> usize {
    rref(rows).1.len()
}

/// Determinant of a square matrix by elimination.
pub fn determinant(field: &Field, rows: &[Vec<FieldElement>]) -> FieldElement {
    let n = rows.len();
    let mut m: Matrix = rows.to_vec();
    let mut det = FieldElement::one(field);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return FieldElement::zero(field);
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for j in c..n {
                let delta = &factor * &m[c][j];
                m[i][j] = &m[i][j] - &delta;
            }
        }
    }
    det
}

/// A basis of `{x : A x = 0}` for an `r x ncols` matrix `A`.
pub fn kernel(field: &Field, rows: &[Vec<FieldElement>], ncols: usize) -> Matrix {
    let (reduced, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElement::zero(field); ncols];
            v[f] = FieldElement::one(field);
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}
