use std::fmt;

use super::bitmat::BitMatrix;
use super::field::FieldPrime;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A dense matrix over `F_p`, stored row-major. A `rows x cols` matrix is a
/// linear map `F_p^cols -> F_p^rows` acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldPrime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Linear maps between coordinate spaces are matrices.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(field: FieldPrime, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldPrime, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing each entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: FieldPrime, rows: &[R]) -> Self {
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        Self::from_rows_with_cols(field, rows, c)
    }

    pub fn from_rows_with_cols<R: AsRef<[i64]>>(field: FieldPrime, rows: &[R], cols: usize) -> Self {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: FieldPrime, rows: usize, columns: &[Vec<u8>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn from_row_vectors(field: FieldPrime, cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> FieldPrime {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.field.p();
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_vec(&self, i: usize) -> Vec<u8> {
        self.row(i).to_vec()
    }
    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product: {}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p() as u32;
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        if rhs.cols == 0 || self.rows == 0 {
            return out;
        }
        let mut acc = vec![0u32; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u32;
                for (x, &b) in acc.iter_mut().zip(rhs.row(l)) {
                    *x += a * b as u32;
                }
                // keep the accumulator bounded for large inner dimensions
                if l % 64 == 63 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = (x % p) as u8;
            }
        }
        out
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p() as u32;
        (0..self.rows)
            .map(|i| {
                let s: u32 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u8) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Kronecker product; row index `(i, k) -> i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if b != 0 {
                            out.data[(i * rhs.rows + k) * out.cols + j * rhs.cols + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn kron_power(&self, n: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, 1);
        for _ in 0..n {
            acc = acc.kron(self);
        }
        acc
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, rhs);
        out
    }

    /// Writes `m` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, m: &Matrix) {
        assert!(r + m.rows <= self.rows && c + m.cols <= self.cols);
        for i in 0..m.rows {
            let dst = (r + i) * self.cols + c;
            self.data[dst..dst + m.cols].copy_from_slice(m.row(i));
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<u8>> = idx.iter().map(|&i| self.row_vec(i)).collect();
        Matrix::from_row_vectors(self.field, self.cols, &rows)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (oj, &j) in idx.iter().enumerate() {
                out.data[i * out.cols + oj] = self.get(i, j);
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, rhs);
        out
    }

    /// Reduced row-echelon form and pivot columns. Uses the bit-packed kernel
    /// when `p = 2`.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if self.field.p() == 2 {
            let mut b = BitMatrix::from_matrix(self);
            let piv = b.rref();
            (b.to_matrix(), piv)
        } else {
            self.rref_generic()
        }
    }

    /// Gaussian elimination over any prime field.
    pub fn rref_generic(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| m.data[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    m.data.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(m.data[rank * cols + col]);
            for j in col..cols {
                m.data[rank * cols + j] = f.mul(m.data[rank * cols + j], inv);
            }
            for r in 0..rows {
                let c = m.data[r * cols + col];
                if r == rank || c == 0 {
                    continue;
                }
                for j in col..cols {
                    let v = f.mul(c, m.data[rank * cols + j]);
                    m.data[r * cols + j] = f.sub(m.data[r * cols + j], v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.field.p() == 2 {
            BitMatrix::from_matrix(self).rank()
        } else {
            self.rref_generic().1.len()
        }
    }

    /// `{v : self * v = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (r, piv) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            vectors.push(v);
        }
        Subspace::span(f, self.cols, &vectors)
    }

    /// The column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_rows(&self.transpose())
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    /// Position in the lexicographic enumeration of `rows x cols` matrices over
    /// column-major entries (first entry most significant).
    pub fn index(&self) -> u64 {
        let p = self.field.order();
        let mut idx = 0u64;
        for j in 0..self.cols {
            for i in 0..self.rows {
                idx = idx * p + self.get(i, j) as u64;
            }
        }
        idx
    }

    pub fn from_index(field: FieldPrime, rows: usize, cols: usize, mut idx: u64) -> Matrix {
        let p = field.order();
        let mut m = Matrix::zeros(field, rows, cols);
        for j in (0..cols).rev() {
            for i in (0..rows).rev() {
                m.data[i * cols + j] = (idx % p) as u8;
                idx /= p;
            }
        }
        m
    }

    /// `"{rows}x{cols}:{row-major digits}"`, e.g. `"2x2:1001"`.
    pub fn key(&self) -> String {
        let digits: String = self
            .data
            .iter()
            .map(|&d| char::from_digit(d as u32, 36).expect("entries below 36"))
            .collect();
        format!("{}x{}:{}", self.rows, self.cols, digits)
    }

    pub fn from_key(field: FieldPrime, key: &str) -> Result<Matrix> {
        let bad = || Error::Parse(format!("bad matrix key {key:?}"));
        let (shape, digits) = key.split_once(':').ok_or_else(bad)?;
        let (r, c) = shape.split_once('x').ok_or_else(bad)?;
        let rows: usize = r.parse().map_err(|_| bad())?;
        let cols: usize = c.parse().map_err(|_| bad())?;
        if digits.chars().count() != rows * cols {
            return Err(bad());
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, ch) in digits.chars().enumerate() {
            let d = ch.to_digit(36).ok_or_else(bad)?;
            if d >= field.p() as u32 {
                return Err(Error::Parse(format!("matrix key {key:?}: digit {d} not in {field}")));
            }
            m.data[k] = d as u8;
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }
}

/// Serialised as its key, e.g. `"2x2:1001"`.
impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// Kernel of a map, in canonical form.
pub fn kernel_space(m: &LinearMap) -> Subspace {
    m.kernel()
}

/// `m^{-1}(t)`: the kernel of the quotient projection by `t` composed with `m`.
pub fn preimage(m: &LinearMap, t: &Subspace) -> Result<Subspace> {
    if t.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "preimage of a subspace of F^{} under a map into F^{}",
            t.ambient_dim(),
            m.rows()
        )));
    }
    Ok(t.quotient_map().mul(m).kernel())
}

/// The reduced row-echelon form of `m` and its pivot columns.
pub fn rref(m: &LinearMap) -> (LinearMap, Vec<usize>) {
    m.rref()
}
