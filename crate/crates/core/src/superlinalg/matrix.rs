use std::fmt;

use super::echelon::Echelon;
use super::field::PrimeField;
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    /// One sorted sparse vector per row.
    Sparse(Vec<SparseVec>),
    /// Row-major residues.
    Dense(Vec<u32>),
}

/// A matrix over F_p.
///
/// Storage is chosen at construction: dense when more than a quarter of the
/// entries are nonzero, sparse rows otherwise. The representation is not
/// observable through the public API except via [`MatrixFp::is_dense`].
#[derive(Clone)]
pub struct MatrixFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl PartialEq for MatrixFp {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|r| self.row(r) == other.row(r))
    }
}

impl Eq for MatrixFp {}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "MatrixFp {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.dense_row(r))?;
        }
        Ok(())
    }
}

impl MatrixFp {
    fn from_sparse_rows_unchecked(field: PrimeField, cols: usize, rows: Vec<SparseVec>) -> Self {
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let n = rows.len();
        let storage = if n * cols > 0 && nnz * 4 > n * cols {
            let mut dense = vec![0; n * cols];
            for (r, row) in rows.iter().enumerate() {
                for &(c, a) in row {
                    dense[r * cols + c] = a;
                }
            }
            Storage::Dense(dense)
        } else {
            Storage::Sparse(rows)
        };
        Self {
            field,
            rows: n,
            cols,
            storage,
        }
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self::from_sparse_rows_unchecked(field, cols, vec![Vec::new(); rows])
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::from_sparse_rows_unchecked(field, n, (0..n).map(|i| vec![(i, 1)]).collect())
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let mut buckets = vec![Vec::new(); rows];
        for (r, c, a) in entries {
            if r >= rows || c >= cols {
                return Err(Error::dims(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            buckets[r].push((c, a % field.p()));
        }
        let rows = buckets
            .into_iter()
            .map(|b| sparse::collect(field, b))
            .collect();
        Ok(Self::from_sparse_rows_unchecked(field, cols, rows))
    }

    /// Builds a matrix from signed integer rows, reducing modulo p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::dims(format!(
                "row {bad} has length {} but row 0 has length {cols}",
                rows[bad].len()
            )));
        }
        let rows = rows
            .iter()
            .map(|r| sparse::from_dense(&r.iter().map(|&a| field.reduce(a)).collect::<Vec<_>>()))
            .collect();
        Ok(Self::from_sparse_rows_unchecked(field, cols, rows))
    }

    pub fn from_sparse_rows(field: PrimeField, cols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            if row.iter().any(|&(c, _)| c >= cols) {
                return Err(Error::dims(format!("row {r} has an entry beyond column {cols}")));
            }
        }
        let rows = rows.into_iter().map(|r| sparse::collect(field, r)).collect();
        Ok(Self::from_sparse_rows_unchecked(field, cols, rows))
    }

    pub fn from_sparse_columns(
        field: PrimeField,
        rows: usize,
        columns: &[SparseVec],
    ) -> Result<Self> {
        let entries = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, a)| (r, c, a)));
        Self::from_triplets(field, rows, columns.len(), entries)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols + c],
            Storage::Sparse(rows) => rows[r]
                .binary_search_by_key(&c, |e| e.0)
                .map_or(0, |i| rows[r][i].1),
        }
    }

    pub fn row(&self, r: usize) -> SparseVec {
        match &self.storage {
            Storage::Dense(d) => sparse::from_dense(&d[r * self.cols..(r + 1) * self.cols]),
            Storage::Sparse(rows) => rows[r].clone(),
        }
    }

    pub fn dense_row(&self, r: usize) -> Vec<u32> {
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols..(r + 1) * self.cols].to_vec(),
            Storage::Sparse(rows) => sparse::to_dense(&rows[r], self.cols),
        }
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.dense_row(r)).collect()
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|&&a| a != 0).count(),
            Storage::Sparse(rows) => rows.iter().map(Vec::len).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, a) in self.row(r) {
                cols[c].push((r, a));
            }
        }
        cols
    }

    pub fn column(&self, c: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|r| {
                let a = self.get(r, c);
                (a != 0).then_some((r, a))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_sparse_rows_unchecked(self.field, self.rows, self.columns())
    }

    pub fn scale(&self, c: u32) -> Self {
        let rows = (0..self.rows)
            .map(|r| sparse::scale(self.field, &self.row(r), c))
            .collect();
        Self::from_sparse_rows_unchecked(self.field, self.cols, rows)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.lin_comb(1, other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.lin_comb(1, other, self.field.neg(1))
    }

    /// `a * self + b * other`.
    pub fn lin_comb(&self, a: u32, other: &Self, b: u32) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dims(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rows = (0..self.rows)
            .map(|r| {
                let left = sparse::scale(self.field, &self.row(r), a);
                sparse::axpy(self.field, &left, b, &other.row(r))
            })
            .collect();
        Ok(Self::from_sparse_rows_unchecked(self.field, self.cols, rows))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let other_rows: Vec<SparseVec> = (0..other.rows).map(|r| other.row(r)).collect();
        let mut acc = vec![0u32; other.cols];
        let rows = (0..self.rows)
            .map(|r| {
                for (k, a) in self.row(r) {
                    for &(c, b) in &other_rows[k] {
                        acc[c] = f.add(acc[c], f.mul(a, b));
                    }
                }
                let out = sparse::from_dense(&acc);
                acc.iter_mut().for_each(|x| *x = 0);
                out
            })
            .collect();
        Ok(Self::from_sparse_rows_unchecked(f, other.cols, rows))
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::dims(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .fold(0, |acc, &(c, a)| f.add(acc, f.mul(a, v[c])))
            })
            .collect())
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::dims("hstack with different row counts"));
        }
        let rows = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r);
                row.extend(other.row(r).into_iter().map(|(c, a)| (c + self.cols, a)));
                row
            })
            .collect();
        Ok(Self::from_sparse_rows_unchecked(self.field, self.cols + other.cols, rows))
    }

    fn echelon(&self, extra: Option<&[u32]>) -> Echelon {
        let cols = self.cols + usize::from(extra.is_some());
        let mut e = Echelon::new(self.field, cols);
        for r in 0..self.rows {
            let mut row = self.row(r);
            if let Some(b) = extra {
                if b[r] != 0 {
                    row.push((self.cols, b[r]));
                }
            }
            e.insert(row);
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.echelon(None).rank()
        } else {
            let mut e = Echelon::new(self.field, self.rows);
            for col in self.columns() {
                e.insert(col);
            }
            e.rank()
        }
    }

    /// Basis of the null space, one vector per non-pivot column in
    /// increasing order. Each vector has a 1 in its own free column and 0 in
    /// every other free column, which is the basis read off the reduced
    /// echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let e = self.echelon(None);
        let mut is_pivot = vec![false; self.cols];
        for p in e.pivots() {
            is_pivot[p] = true;
        }
        let neg_zero = |_: &SparseVec| 0;
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0; self.cols];
                x[free] = 1;
                e.back_substitute(self.cols, x, neg_zero)
            })
            .collect()
    }

    /// Some `v` with `self * v = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::dims(format!(
                "right-hand side of length {} for a matrix with {} rows",
                b.len(),
                self.rows
            )));
        }
        let b: Vec<u32> = b.iter().map(|&a| a % self.field.p()).collect();
        let e = self.echelon(Some(&b));
        if e.pivot_of(self.cols).is_some() {
            return Ok(None);
        }
        let n = self.cols;
        let rhs = |row: &SparseVec| row.last().filter(|e| e.0 == n).map_or(0, |e| e.1);
        Ok(Some(e.back_substitute(n, vec![0; n], rhs)))
    }
}
