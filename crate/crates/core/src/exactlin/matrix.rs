use core::fmt;

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Field, Scalar};
use crate::error::Error;

/// Dense row-major matrix over an exact field.
///
/// Shape mismatches in arithmetic are programming errors and panic, the same
/// way slice indexing does. Fallible construction from external data goes
/// through [`Matrix::from_data`] / [`Matrix::from_rows`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
pub(crate) struct Echelon {
    pub(crate) reduced: Matrix,
    pub(crate) pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Shape { expected: (rows, cols), found: (data.len(), 1) });
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::WrongField(alloc::format!("{bad}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is needed to shape the empty case.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape { expected: (n, cols), found: (n, r.len()) });
            }
            data.extend(r);
        }
        Self::from_data(field, n, cols, data)
    }

    /// Integer entries, row-major. Panics if `entries.len() != rows * cols`.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix { field, rows, cols, data: entries.iter().map(|&e| field.from_i64(e)).collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.data[r * self.cols + c].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self.data[r * self.cols + c];
                    if r == c { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        assert_eq!(self.field, rhs.field, "field mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = f.add(slot, &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, s)).collect() }
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(&self, k: i64) -> Matrix {
        if k.rem_euclid(2) == 0 { self.clone() } else { self.neg() }
    }

    /// Side-by-side concatenation; all parts must have `rows` rows.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row count");
            out.set_block(0, off, p);
            off += p.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must have `cols` columns.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column count");
            out.set_block(off, 0, p);
            off += p.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].clone_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut out = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].clone_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.data[r * self.cols + c].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, idx.len(), self.cols);
        for (j, &r) in idx.iter().enumerate() {
            out.data[j * self.cols..(j + 1) * self.cols].clone_from_slice(self.row(r));
        }
        out
    }

    /// Kronecker product; the row/column index of `(i, k)` is `i * other.dim + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let (r2, c2) = other.shape();
        let mut out = Self::zeros(f, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = &other.data[k * c2 + l];
                        if !b.is_zero() {
                            out.data[(i * r2 + k) * out.cols + j * c2 + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan elimination searching pivots only among the first
    /// `pivot_limit` columns. Pivot row = first nonzero entry at or below the
    /// current row, columns scanned left to right.
    pub(crate) fn echelon_limited(&self, pivot_limit: usize) -> Echelon {
        let f = self.field;
        let (rows, cols) = self.shape();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..pivot_limit.min(cols) {
            if pr == rows {
                break;
            }
            let Some(src) = (pr..rows).find(|&r| !m.data[r * cols + c].is_zero()) else {
                continue;
            };
            if src != pr {
                for j in 0..cols {
                    m.data.swap(src * cols + j, pr * cols + j);
                }
            }
            let inv = f.inv(&m.data[pr * cols + c]).expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..cols {
                    let v = &m.data[pr * cols + j];
                    if !v.is_zero() {
                        m.data[pr * cols + j] = f.mul(v, &inv);
                    }
                }
            }
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let factor = m.data[r * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let p = &m.data[pr * cols + j];
                    if p.is_zero() {
                        continue;
                    }
                    let t = f.mul(&factor, p);
                    m.data[r * cols + j] = f.sub(&m.data[r * cols + j], &t);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub(crate) fn echelon(&self) -> Echelon {
        self.echelon_limited(self.cols)
    }

    /// Rank of the column space.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows < self.cols {
            return self.transpose().echelon().pivots.len();
        }
        self.echelon().pivots.len()
    }

    /// Columns form a basis of the null space; free variables are taken in
    /// column order, each contributing the standard vector with its pivot
    /// entries filled in.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + j] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                let v = &reduced.data[i * self.cols + fc];
                if !v.is_zero() {
                    k.data[pc * free.len() + j] = f.neg(v);
                }
            }
        }
        k
    }

    /// Indices of the first maximal independent set of columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// A basis of the column space made of original columns (pivot columns in input order).
    pub fn column_basis(&self) -> Matrix {
        self.select_columns(&self.pivot_columns())
    }

    /// Some `X` with `self * X = rhs`, free variables set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let f = self.field;
        let aug = Self::hstack(f, self.rows, &[self, rhs]);
        let Echelon { reduced, pivots } = aug.echelon_limited(self.cols);
        let r = pivots.len();
        for row in r..self.rows {
            if (self.cols..aug.cols).any(|c| !reduced.data[row * aug.cols + c].is_zero()) {
                return None;
            }
        }
        let mut x = Self::zeros(f, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.data[pc * rhs.cols + j] = reduced.data[i * aug.cols + self.cols + j].clone();
            }
        }
        Some(x)
    }

    /// `L` with `L * self = I`, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let f = self.field;
        let id = Self::identity(f, self.rows);
        let aug = Self::hstack(f, self.rows, &[self, &id]);
        let Echelon { reduced, pivots } = aug.echelon_limited(self.cols);
        if pivots.len() != self.cols {
            return None;
        }
        Some(reduced.block(0, self.cols, self.cols, self.rows))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.left_inverse()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn spans(&self, other: &Matrix) -> bool {
        other.cols == 0 || self.solve(other).is_some()
    }

    /// Basis of the intersection of two column spaces.
    pub fn intersect(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let joint = Self::hstack(f, self.rows, &[self, &other.neg()]);
        let k = joint.kernel_basis();
        self.mul(&k.block(0, self.cols, 0, k.cols)).column_basis()
    }

    /// Basis of the sum of two column spaces.
    pub fn sum_spaces(&self, other: &Matrix) -> Matrix {
        Self::hstack(self.field, self.rows, &[self, other]).column_basis()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for (j, v) in self.row(r).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str("]")
    }
}
