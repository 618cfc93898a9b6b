//! Dense exact linear algebra over any scalar backend.
//!
//! Matrices are immutable after construction and all operations are pure,
//! so values can be freely shared across worker threads.  Inversion is
//! Gauss–Jordan with exact pivoting; over dual numbers pivots are selected
//! by invertibility of the value part, which is exactly the unit condition
//! of that local ring.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    /// Degenerate input; callers typically resample the parameter point.
    #[error("matrix is singular")]
    Singular,
    #[error("block at ({}, {}) has shape {found:?}, slot requires {expected:?}", at.0, at.1)]
    ShapeMismatch {
        at: (usize, usize),
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix payload is invalid: {0}")]
    BadPayload(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major dense matrix over the field `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix::new(field, rows, cols, data)
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(
        field: F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix::new(field, rows, cols, data)
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Matrix::from_fn(field.clone(), r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn diagonal(field: F, entries: Vec<F::Elem>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.add(self.get(r, c), other.get(r, c))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.sub(self.get(r, c), other.get(r, c))
        })
    }

    pub fn neg(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.neg(self.get(r, c))
        })
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.mul(s, self.get(r, c))
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(r, k), other.get(k, c)));
                }
                data.push(acc);
            }
        }
        Matrix::new(self.field.clone(), self.rows, other.cols, data)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(self.get(r, k), vk));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn trace(&self) -> F::Elem {
        assert!(self.is_square());
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = self.field.add(&acc, self.get(i, i));
        }
        acc
    }

    pub fn column(&self, c: usize) -> Self {
        Matrix::from_fn(self.field.clone(), self.rows, 1, |r, _| self.get(r, c).clone())
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r1 <= self.rows && c1 <= self.cols && r0 <= r1 && c0 <= c1);
        Matrix::from_fn(self.field.clone(), r1 - r0, c1 - c0, |r, c| {
            self.get(r0 + r, c0 + c).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    /// Re-express the matrix over another backend entry by entry (used to
    /// lift base-field matrices into dual numbers).
    pub fn map_into<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        let data = self.data.iter().map(f).collect();
        Matrix::new(field, self.rows, self.cols, data)
    }

    /// Exact inverse by Gauss–Jordan elimination.  Pivots must be units;
    /// `Singular` signals a degenerate point.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        assert!(self.is_square(), "inverse requires a square matrix");
        let n = self.rows;
        let f = self.field.clone();
        let width = 2 * n;
        let mut aug: Vec<F::Elem> = Vec::with_capacity(n * width);
        for r in 0..n {
            for c in 0..n {
                aug.push(self.get(r, c).clone());
            }
            for c in 0..n {
                aug.push(if r == c { f.one() } else { f.zero() });
            }
        }
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| f.inv(&aug[r * width + col]).is_some())
                .ok_or(LinalgError::Singular)?;
            if pivot_row != col {
                for c in 0..width {
                    aug.swap(col * width + c, pivot_row * width + c);
                }
            }
            let pinv = f.inv(&aug[col * width + col]).expect("checked pivot");
            for c in col..width {
                aug[col * width + c] = f.mul(&pinv, &aug[col * width + c]);
            }
            for r in 0..n {
                if r == col || f.is_zero(&aug[r * width + col]) {
                    continue;
                }
                let factor = aug[r * width + col].clone();
                for c in col..width {
                    let t = f.mul(&factor, &aug[col * width + c]);
                    aug[r * width + c] = f.sub(&aug[r * width + c], &t);
                }
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(aug[r * width + n + c].clone());
            }
        }
        Ok(Matrix::new(self.field.clone(), n, n, data))
    }

    /// Determinant by elimination (exact fields only).
    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        debug_assert!(F::IS_EXACT_FIELD);
        let n = self.rows;
        let f = self.field.clone();
        let mut m = self.data.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !f.is_zero(&m[r * n + col])) else {
                return f.zero();
            };
            if pr != col {
                for c in 0..n {
                    m.swap(col * n + c, pr * n + c);
                }
                det = f.neg(&det);
            }
            let pivot = m[col * n + col].clone();
            det = f.mul(&det, &pivot);
            let pinv = f.inv(&pivot).expect("nonzero pivot");
            for r in col + 1..n {
                if f.is_zero(&m[r * n + col]) {
                    continue;
                }
                let factor = f.mul(&m[r * n + col], &pinv);
                for c in col..n {
                    let t = f.mul(&factor, &m[col * n + c]);
                    m[r * n + c] = f.sub(&m[r * n + c], &t);
                }
            }
        }
        det
    }

    /// Exact row-echelon rank.  ℚ(ρ) routes through fraction-free
    /// elimination, prime fields through plain Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.field.rank_slice(self.rows, self.cols, self.data.clone())
    }

    /// Basis of the right null space (exact fields).
    pub fn null_space(&self) -> Vec<Vec<F::Elem>> {
        debug_assert!(F::IS_EXACT_FIELD);
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !f.is_zero(&m[r * cols + col])) else {
                continue;
            };
            for c in 0..cols {
                m.swap(rank * cols + c, pr * cols + c);
            }
            let pinv = f.inv(&m[rank * cols + col]).expect("nonzero pivot");
            for c in col..cols {
                m[rank * cols + c] = f.mul(&pinv, &m[rank * cols + c]);
            }
            for r in 0..rows {
                if r == rank || f.is_zero(&m[r * cols + col]) {
                    continue;
                }
                let factor = m[r * cols + col].clone();
                for c in col..cols {
                    let t = f.mul(&factor, &m[rank * cols + c]);
                    m[r * cols + c] = f.sub(&m[r * cols + c], &t);
                }
            }
            pivot_of_col[col] = Some(rank);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (col, pr) in pivot_of_col.iter().enumerate() {
                if let Some(pr) = pr {
                    v[col] = f.neg(&m[pr * cols + free]);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally echelonized row span with unit pivots; used for spin-ups,
/// algebra closures and incremental rank computations.
#[derive(Debug, Clone)]
pub struct RowSpan<F: Field> {
    field: F,
    width: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpan<F> {
    pub fn new(field: F, width: usize) -> Self {
        RowSpan {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the span; inserts and returns the reduced vector
    /// when independent, `None` when v was already in the span.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        assert_eq!(v.len(), self.width);
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for j in p..self.width {
                let t = f.mul(&c, &row[j]);
                v[j] = f.sub(&v[j], &t);
            }
        }
        let p = v.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&v[p]).expect("nonzero field element");
        for x in v.iter_mut().skip(p) {
            *x = f.mul(&inv, x);
        }
        self.rows.push(v.clone());
        self.pivots.push(p);
        Some(v)
    }
}

/// Concatenates a grid of blocks into one matrix.
///
/// `None` stands for a zero block.  Zero-height or zero-width groups are
/// skipped.  A present block whose shape disagrees with its slot is the
/// primary guard against subscript typos in transcribed block displays.
pub fn block_assemble<F: Field>(
    field: F,
    row_heights: &[usize],
    col_widths: &[usize],
    grid: &[Vec<Option<Matrix<F>>>],
) -> Result<Matrix<F>, LinalgError> {
    assert_eq!(grid.len(), row_heights.len(), "grid rows");
    let total_rows: usize = row_heights.iter().sum();
    let total_cols: usize = col_widths.iter().sum();
    let mut out = Matrix::zeros(field, total_rows, total_cols);
    let mut r0 = 0usize;
    for (i, row) in grid.iter().enumerate() {
        assert_eq!(row.len(), col_widths.len(), "grid cols in row {i}");
        let h = row_heights[i];
        let mut c0 = 0usize;
        for (j, block) in row.iter().enumerate() {
            let w = col_widths[j];
            if let Some(b) = block {
                if (b.rows(), b.cols()) != (h, w) {
                    return Err(LinalgError::ShapeMismatch {
                        at: (i, j),
                        expected: (h, w),
                        found: (b.rows(), b.cols()),
                    });
                }
                for r in 0..h {
                    for c in 0..w {
                        out.set(r0 + r, c0 + c, b.get(r, c).clone());
                    }
                }
            }
            c0 += w;
        }
        r0 += h;
    }
    Ok(out)
}

/// Krylov matrix with columns v, Av, A²v, …, A^{n-1}v.
pub fn krylov_matrix<F: Field>(a: &Matrix<F>, v: &Matrix<F>) -> Matrix<F> {
    assert!(a.is_square());
    let n = a.rows();
    assert_eq!((v.rows(), v.cols()), (n, 1));
    let field = a.field().clone();
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    let mut cur: Vec<F::Elem> = (0..n).map(|r| v.get(r, 0).clone()).collect();
    for _ in 0..n {
        cols.push(cur.clone());
        cur = a.mul_vec(&cur);
    }
    Matrix::from_fn(field, n, n, |r, c| cols[c][r].clone())
}

/// JSON form of a matrix: `{rows, cols, field, entries}` with entries as
/// scalar strings in row-major order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub field: String,
    pub entries: Vec<String>,
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        field: m.field().spec_str(),
        entries: m.data().iter().map(|e| m.field().encode(e)).collect(),
    }
}

pub fn matrix_from_json<F: Field>(field: F, json: &MatrixJson) -> Result<Matrix<F>, LinalgError> {
    if json.field != field.spec_str() {
        return Err(LinalgError::BadPayload(format!(
            "matrix is over {:?}, expected {:?}",
            json.field,
            field.spec_str()
        )));
    }
    if json.entries.len() != json.rows * json.cols {
        return Err(LinalgError::BadPayload(format!(
            "{} entries for a {}x{} matrix",
            json.entries.len(),
            json.rows,
            json.cols
        )));
    }
    let mut data = Vec::with_capacity(json.entries.len());
    for s in &json.entries {
        data.push(field.decode(s)?);
    }
    Ok(Matrix::new(field, json.rows, json.cols, data))
}
