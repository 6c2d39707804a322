//! Bit-packed matrices over F_2. Rows are slices of `u64` words and row
//! operations are word-wise XOR.

use super::field::FieldPrime;
use super::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        assert_eq!(m.field().p(), 2, "bit-packed path is F_2 only");
        let mut b = BitMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != 0 {
                    b.set(i, j);
                }
            }
        }
        b
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(FieldPrime::TWO, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, 1);
                }
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    /// `row[dst] ^= row[src]`, starting at word `from`.
    #[inline]
    fn xor_row(&mut self, dst: usize, src: usize, from: usize) {
        let (w, data) = (self.words, &mut self.data);
        for k in from..w {
            let v = data[src * w + k];
            data[dst * w + k] ^= v;
        }
    }

    /// Reduces to reduced row-echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(rank, piv);
            let from = col / 64;
            for r in 0..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_row(r, rank, from);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let f = FieldPrime::TWO;
        let mut m = Matrix::zeros(f, 3, 130);
        m.set(0, 129, 1);
        m.set(1, 64, 1);
        m.set(1, 129, 1);
        m.set(2, 0, 1);
        m.set(2, 64, 1);
        let mut b = BitMatrix::from_matrix(&m);
        let piv = b.rref();
        assert_eq!(piv, vec![0, 64, 129]);
        assert_eq!(b.to_matrix(), m.rref_generic().0);
    }
}
