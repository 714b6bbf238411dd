//! Dense matrices over a finite field with exact elimination.
//!
//! Row reduction never permutes columns, so column `j` of a reduced matrix
//! still belongs to coordinate `j` of the code it generates.

use std::fmt;
use std::ops::Index;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FieldSpec, Fq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrices live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("entry {0} does not belong to the field")]
    BadEntry(u32),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: Arc<FieldSpec>, rows: usize, cols: usize, data: Vec<Fq>) -> Result<Matrix, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&a| !field.contains(a)) {
            return Err(LinalgError::BadEntry(bad.enc()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds a matrix from rows of raw encodings.
    pub fn from_encodings(field: Arc<FieldSpec>, rows: &[Vec<u32>]) -> Result<Matrix, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&e| Fq::from_enc(e)).collect();
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Builds a matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: Arc<FieldSpec>, rows: usize, columns: &[Vec<Fq>]) -> Result<Matrix, LinalgError> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::Dimension(format!("column {j} has {} entries", col.len())));
            }
            for (i, &a) in col.iter().enumerate() {
                if !m.field.contains(a) {
                    return Err(LinalgError::BadEntry(a.enc()));
                }
                m.set(i, j, a);
            }
        }
        Ok(m)
    }

    pub fn zeros(field: Arc<FieldSpec>, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(field: Arc<FieldSpec>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: Fq) {
        self.data[i * self.cols + j] = a;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[Fq] {
        &self.data
    }

    pub fn to_encodings(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|a| a.enc()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn same_field(&self, other: &Matrix) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if !self.same_field(other) {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &*self.field;
        let mut out = Matrix::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn check_indices(idx: &[usize], size: usize) -> Result<(), LinalgError> {
        match idx.iter().find(|&&i| i >= size) {
            Some(&index) => Err(LinalgError::IndexOutOfRange { index, size }),
            None => Ok(()),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix, LinalgError> {
        Matrix::check_indices(rows, self.rows)?;
        Matrix::check_indices(cols, self.cols)?;
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j))).collect();
        Ok(Matrix { field: self.field.clone(), rows: rows.len(), cols: cols.len(), data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix, LinalgError> {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Matrix, LinalgError> {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if !self.same_field(other) {
            return Err(LinalgError::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(LinalgError::Dimension("row counts differ".into()));
        }
        let mut out = Matrix::zeros(self.field.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if !self.same_field(other) {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(LinalgError::Dimension("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: Fq) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    /// row[target] -= c * row[src]
    fn eliminate(&mut self, target: usize, src: usize, c: Fq, from: usize) {
        let f = self.field.clone();
        for j in from..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = f.sub(self.get(target, j), f.mul(c, s));
            self.set(target, j, v);
        }
    }

    /// Reduced row echelon form (Gauss-Jordan, columns scanned left to
    /// right, zero rows last).
    pub fn rref(&self) -> RowEchelon {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        m.eliminate(i, r, factor, c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowEchelon { matrix: m, pivots }
    }

    /// Reduced echelon form and whether it is systematic, i.e. `[I | B]`
    /// with pivots exactly in the leading columns. When the flag is false
    /// the returned matrix is still the reduced echelon form.
    pub fn echelonize(&self) -> (Matrix, bool) {
        let e = self.rref();
        let ok = self.rows <= self.cols && e.pivots.len() == self.rows && e.pivots.iter().enumerate().all(|(i, &p)| i == p);
        (e.matrix, ok)
    }

    /// Whether the leading square block is the identity.
    pub fn is_systematic(&self) -> bool {
        self.rows <= self.cols
            && (0..self.rows).all(|i| (0..self.rows).all(|j| self.get(i, j) == if i == j { Fq::ONE } else { Fq::ZERO }))
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn det(&self) -> Result<Fq, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(det_in_place(&self.field, self.data.clone(), self.rows))
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Fq, LinalgError> {
        if rows.len() != cols.len() {
            return Err(LinalgError::Dimension(format!(
                "minor needs equal index sets, got {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        Matrix::check_indices(rows, self.rows)?;
        Matrix::check_indices(cols, self.cols)?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Ok(det_in_place(&self.field, data, n))
    }

    /// A basis K of the right kernel: `self * K^T = 0`.
    pub fn right_kernel(&self) -> Matrix {
        let e = self.rref();
        let f = &*self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field.clone(), free.len(), self.cols);
        for (r, &fc) in free.iter().enumerate() {
            k.set(r, fc, Fq::ONE);
            for (i, &pc) in e.pivots.iter().enumerate() {
                k.set(r, pc, f.neg(e.matrix.get(i, fc)));
            }
        }
        k
    }
}

/// Determinant by elimination; consumes a row-major n x n buffer.
fn det_in_place(f: &FieldSpec, mut a: Vec<Fq>, n: usize) -> Fq {
    let mut det = Fq::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i * n + c].is_zero()) else {
            return Fq::ZERO;
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = f.neg(det);
        }
        let pivot = a[c * n + c];
        det = f.mul(det, pivot);
        let inv = f.inv(pivot).expect("pivot is nonzero");
        for i in c + 1..n {
            let factor = f.mul(a[i * n + c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                a[i * n + j] = f.sub(a[i * n + j], f.mul(factor, a[c * n + j]));
            }
        }
    }
    det
}

impl Index<(usize, usize)> for Matrix {
    type Output = Fq;

    fn index(&self, (i, j): (usize, usize)) -> &Fq {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
