//! Plain Gaussian elimination over a field.
//!
//! This is deliberately separate from the Smith normal form code: the
//! persistence-module oracle and the barcode self-checks use it as an
//! independent route to ranks, kernels and span membership.

use crate::matrix::Matrix;
use crate::rings::Field;

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a.get(p, j).clone();
                a.set(p, j, a.get(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = field.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || field.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..cols {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Basis of `{v : m·v = 0}`, one vector per free column.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    let cols = m.cols();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(r.get(row, free));
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `m·x = b`, if one exists.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let (rows, cols) = m.shape();
    assert_eq!(b.len(), rows, "right-hand side length");
    let mut aug = Matrix::zeros(field, rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, cols, b[i].clone());
    }
    let (r, pivots) = rref(field, &aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, cols).clone();
    }
    Some(x)
}

/// Whether `v` lies in the span of `vectors` (all of the same length).
pub fn in_span<F: Field>(field: &F, vectors: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    if v.iter().all(|e| field.is_zero(e)) {
        return true;
    }
    let m = Matrix::from_columns(v.len(), vectors, field.zero());
    solve(field, &m, v).is_some()
}

/// Rank of the span of the given column vectors of length `len`.
pub fn span_rank<F: Field>(field: &F, len: usize, vectors: &[Vec<F::Elem>]) -> usize {
    rank(field, &Matrix::from_columns(len, vectors, field.zero()))
}
