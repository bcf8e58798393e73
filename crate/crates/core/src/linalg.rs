//! Dense matrices over a [`FieldSpec`] and exact Gaussian elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("basis columns are linearly dependent (rank {rank} < {columns})")]
    RankDeficient { rank: usize, columns: usize },
    #[error("matrix is singular")]
    Singular,
}

pub(crate) fn dim_mismatch(expected: impl fmt::Display, found: impl fmt::Display) -> LinalgError {
    LinalgError::DimensionMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, checking shape and field membership.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(dim_mismatch(
                    format!("{cols} entries in row {i}"),
                    row.len(),
                ));
            }
            for x in row {
                x.ensure_in(field)?;
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data,
        })
    }

    /// Builds an `n x m` matrix whose columns are the given vectors.
    pub fn from_columns(
        field: FieldSpec,
        n: usize,
        columns: &[Vec<FieldElement>],
    ) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(field, n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(dim_mismatch(n, col.len()));
            }
            for (i, x) in col.iter().enumerate() {
                x.ensure_in(field)?;
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(field: FieldSpec, entries: &[FieldElement]) -> Self {
        let mut m = Matrix::zeros(field, entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Entrywise involution.
    pub fn conj(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(FieldElement::conj).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(dim_mismatch(
                format!("{} rows", self.cols),
                format!("{} rows", rhs.rows),
            ));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(dim_mismatch(self.shape(), rhs.shape()));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.add(&rhs.scale(&-self.field.one()))
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.cols {
            return Err(dim_mismatch(self.cols, v.len()));
        }
        for x in v {
            x.ensure_in(self.field)?;
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    fn shape(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    fn check_field(&self, rhs: &Matrix) -> Result<(), LinalgError> {
        if self.field != rhs.field {
            return Err(FieldError::FieldMismatch {
                expected: self.field,
                found: rhs.field,
            }
            .into());
        }
        Ok(())
    }

    /// Reduces to reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pivot) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pivot);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let t = &factor * &self[(r, j)];
                    self[(i, j)] = &self[(i, j)] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}` as the columns of a `cols x k` matrix.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -&r[(row, f)];
            }
        }
        basis
    }

    pub fn determinant(&self) -> Result<FieldElement, LinalgError> {
        if !self.is_square() {
            return Err(dim_mismatch("square matrix", self.shape()));
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..self.cols {
            let Some(pivot) = (c..self.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pivot != c {
                m.swap_rows(c, pivot);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().expect("pivot is nonzero");
            for i in c + 1..self.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..self.cols {
                    let t = &factor * &m[(c, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(dim_mismatch("square matrix", self.shape()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(dim_mismatch(self.rows, rhs.rows));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Keeps only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;

    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix over {} ({}x{})",
            self.field, self.rows, self.cols
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Formats a vector as `(a, b, c)` using element literals.
pub fn format_vector(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

/// A subspace of `k^n` given by a basis with linearly independent columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Wraps `basis` (an `n x m` matrix), rejecting dependent columns.
    pub fn new(basis: Matrix) -> Result<Self, LinalgError> {
        let rank = basis.rank();
        if rank != basis.cols() {
            return Err(LinalgError::RankDeficient {
                rank,
                columns: basis.cols(),
            });
        }
        Ok(Subspace { basis })
    }

    /// Span of arbitrary vectors; dependent vectors are dropped.
    pub fn span(
        field: FieldSpec,
        n: usize,
        vectors: &[Vec<FieldElement>],
    ) -> Result<Self, LinalgError> {
        let m = Matrix::from_columns(field, n, vectors)?;
        Ok(Subspace::column_space(&m))
    }

    /// Column space of `m`, keeping the pivot columns as basis.
    pub fn column_space(m: &Matrix) -> Self {
        let pivots = m.rref().1;
        Subspace {
            basis: m.select_columns(&pivots),
        }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, n, 0),
        }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, n),
        }
    }

    pub(crate) fn from_kernel(m: &Matrix) -> Self {
        Subspace { basis: m.kernel() }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElement>> {
        self.basis.columns()
    }

    pub fn check_compatible(&self, field: FieldSpec, n: usize) -> Result<(), LinalgError> {
        if self.field() != field {
            return Err(FieldError::FieldMismatch {
                expected: field,
                found: self.field(),
            }
            .into());
        }
        if self.ambient_dim() != n {
            return Err(dim_mismatch(
                format!("ambient dimension {n}"),
                self.ambient_dim(),
            ));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim() {
            return Err(dim_mismatch(self.ambient_dim(), v.len()));
        }
        let col = Matrix::from_columns(self.field(), v.len(), &[v.to_vec()])?;
        let aug = self.basis.hstack(&col)?;
        Ok(aug.rank() == self.dim())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        other.check_compatible(self.field(), self.ambient_dim())?;
        let aug = self.basis.hstack(&other.basis)?;
        Ok(aug.rank() == self.dim())
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        other.check_compatible(self.field(), self.ambient_dim())?;
        Ok(Subspace::column_space(&self.basis.hstack(&other.basis)?))
    }

    /// Whether `self + other = k^n` with `self ∩ other = 0`.
    pub fn is_complement_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        let sum = self.join(other)?;
        Ok(sum.dim() == self.ambient_dim() && self.dim() + other.dim() == self.ambient_dim())
    }

    /// Extends the basis greedily with standard vectors to a basis of `k^n`.
    /// The first `dim()` columns of the result are this subspace's basis.
    pub fn extend_to_full_basis(&self) -> Matrix {
        let n = self.ambient_dim();
        let mut current = self.basis.clone();
        let mut rank = self.dim();
        for i in 0..n {
            if rank == n {
                break;
            }
            let e = Matrix::identity(self.field(), n).select_columns(&[i]);
            let candidate = current.hstack(&e).expect("same shape");
            if candidate.rank() > rank {
                current = candidate;
                rank += 1;
            }
        }
        current
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|v| format_vector(v))
            .collect();
        write!(
            f,
            "span{{{}}} in {}^{}",
            cols.join(", "),
            self.field(),
            self.ambient_dim()
        )
    }
}
