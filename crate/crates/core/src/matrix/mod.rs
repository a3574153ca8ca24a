//! Dense matrices over a Euclidean domain, elementary operations, and Smith
//! normal decompositions (ungraded and graded).

mod graded;
mod snd;

use std::fmt;

use thiserror::Error;

use crate::rings::{EuclideanDomain, RingError};

pub use graded::{
    check_homogeneity, graded_snd, graded_snd_verified, graded_snd_with_hook, GradedMatrix, StepHook,
    GradedSndResult, GradedStep,
};
pub use snd::{kernel_columns, snd, verify_snd, SndResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("index {index} out of range for {side:?} side of a {rows}x{cols} matrix")]
    IndexOutOfRange {
        side: Side,
        index: usize,
        rows: usize,
        cols: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dilation factor is not a unit")]
    NotAUnit,
    #[error("transvection target and source are both {0}")]
    SelfTransvection(usize),
    #[error("graded matrix invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Row,
    Col,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpKind<T> {
    /// Exchange indices `a` and `b`.
    Swap(usize, usize),
    /// Multiply index `k` by the unit `mu`.
    Dilate(usize, T),
    /// Add `alpha` times `source` to `target`.
    Transvect { target: usize, source: usize, alpha: T },
}

/// An elementary matrix acting on rows (left multiplication) or columns
/// (right multiplication).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryOp<T> {
    pub kind: OpKind<T>,
    pub side: Side,
}

impl<T> ElementaryOp<T> {
    pub fn row(kind: OpKind<T>) -> Self {
        ElementaryOp { kind, side: Side::Row }
    }

    pub fn col(kind: OpKind<T>) -> Self {
        ElementaryOp { kind, side: Side::Col }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors. An empty list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let n = rows.first().map_or(0, Vec::len);
        let m = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: m,
            cols: n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<R: EuclideanDomain<Elem = T>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: EuclideanDomain<Elem = T>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>], fill: T) -> Self {
        let mut m = Self::filled(rows, columns.len(), fill);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / cols.max(1), k % cols.max(1), v))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_all(&self, value: &T) -> bool {
        self.data.iter().all(|v| v == value)
    }
}

pub fn mat_mul<R: EuclideanDomain>(
    ring: &R,
    a: &Matrix<R::Elem>,
    b: &Matrix<R::Elem>,
) -> Result<Matrix<R::Elem>, MatrixError> {
    if a.cols != b.rows {
        return Err(MatrixError::ShapeMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if ring.is_zero(bkj) {
                    continue;
                }
                let acc = ring.add(out.get(i, j), &ring.mul(aik, bkj));
                out.set(i, j, acc);
            }
        }
    }
    Ok(out)
}

pub fn is_zero_matrix<R: EuclideanDomain>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    m.data.iter().all(|v| ring.is_zero(v))
}

fn check_index<T>(m: &Matrix<T>, side: Side, index: usize) -> Result<(), MatrixError> {
    let bound = match side {
        Side::Row => m.rows,
        Side::Col => m.cols,
    };
    if index >= bound {
        return Err(MatrixError::IndexOutOfRange {
            side,
            index,
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(())
}

/// Applies `op` to `m` in place: row operations are left multiplication by
/// the elementary matrix, column operations right multiplication.
pub fn apply_elementary_in_place<R: EuclideanDomain>(
    ring: &R,
    m: &mut Matrix<R::Elem>,
    op: &ElementaryOp<R::Elem>,
) -> Result<(), MatrixError> {
    let side = op.side;
    match &op.kind {
        OpKind::Swap(a, b) => {
            check_index(m, side, *a)?;
            check_index(m, side, *b)?;
            match side {
                Side::Row => m.swap_rows(*a, *b),
                Side::Col => m.swap_cols(*a, *b),
            }
        }
        OpKind::Dilate(k, mu) => {
            check_index(m, side, *k)?;
            if !ring.is_unit(mu) {
                return Err(MatrixError::NotAUnit);
            }
            match side {
                Side::Row => {
                    for j in 0..m.cols {
                        let v = ring.mul(mu, m.get(*k, j));
                        m.set(*k, j, v);
                    }
                }
                Side::Col => {
                    for i in 0..m.rows {
                        let v = ring.mul(m.get(i, *k), mu);
                        m.set(i, *k, v);
                    }
                }
            }
        }
        OpKind::Transvect { target, source, alpha } => {
            check_index(m, side, *target)?;
            check_index(m, side, *source)?;
            if target == source {
                return Err(MatrixError::SelfTransvection(*target));
            }
            if ring.is_zero(alpha) {
                return Ok(());
            }
            match side {
                Side::Row => {
                    for j in 0..m.cols {
                        let s = m.get(*source, j);
                        if ring.is_zero(s) {
                            continue;
                        }
                        let v = ring.add(m.get(*target, j), &ring.mul(alpha, s));
                        m.set(*target, j, v);
                    }
                }
                Side::Col => {
                    for i in 0..m.rows {
                        let s = m.get(i, *source);
                        if ring.is_zero(s) {
                            continue;
                        }
                        let v = ring.add(m.get(i, *target), &ring.mul(s, alpha));
                        m.set(i, *target, v);
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn apply_elementary<R: EuclideanDomain>(
    ring: &R,
    m: &Matrix<R::Elem>,
    op: &ElementaryOp<R::Elem>,
) -> Result<Matrix<R::Elem>, MatrixError> {
    let mut out = m.clone();
    apply_elementary_in_place(ring, &mut out, op)?;
    Ok(out)
}

/// The `n×n` elementary matrix of `op`.
pub fn elementary_matrix<R: EuclideanDomain>(
    ring: &R,
    n: usize,
    op: &ElementaryOp<R::Elem>,
) -> Result<Matrix<R::Elem>, MatrixError> {
    let id = Matrix::identity(ring, n);
    // the elementary matrix is the op applied to the identity
    let as_row = ElementaryOp::row(op.kind.clone());
    let e = apply_elementary(ring, &id, &as_row)?;
    Ok(match op.side {
        Side::Row => e,
        Side::Col => e.transpose(),
    })
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Renders a matrix with ring formatting, columns right-aligned.
pub fn format_matrix<R: EuclideanDomain>(ring: &R, m: &Matrix<R::Elem>) -> String {
    let cells: Vec<String> = m.data.iter().map(|v| ring.format_elem(v)).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for i in 0..m.rows {
        let line: Vec<String> = (0..m.cols)
            .map(|j| format!("{:>width$}", cells[i * m.cols + j]))
            .collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}
