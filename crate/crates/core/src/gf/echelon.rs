use super::field::FieldPrime;
use super::matrix::Matrix;
use super::subspace::Subspace;

/// A row space built one vector at a time, kept in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldPrime,
    width: usize,
    // sorted by pivot column
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldPrime, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let mut e = Echelon::new(s.field(), s.ambient_dim());
        e.rows = s.basis().to_rows();
        e.pivots = s.pivots().to_vec();
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the current rows; the result is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, v: &mut [u8]) {
        let f = self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if a != 0 {
                let na = f.neg(a);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(na, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let f = self.field;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let a = row[pc];
            if a != 0 {
                let na = f.neg(a);
                for (x, &r) in row.iter_mut().zip(&w) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(na, r));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&c| c < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn into_subspace(self) -> Subspace {
        let m = Matrix::from_row_vectors(self.field, self.width, &self.rows);
        Subspace::from_rref_unchecked(m, self.pivots)
    }

    pub fn to_subspace(&self) -> Subspace {
        self.clone().into_subspace()
    }
}

/// Smallest subspace containing `seeds` and stable under every matrix in
/// `gens` (all square of the same size).
pub fn spin(field: FieldPrime, dim: usize, seeds: &[Vec<u8>], gens: &[Matrix]) -> Subspace {
    let mut e = Echelon::new(field, dim);
    let mut queue: Vec<Vec<u8>> = Vec::new();
    for s in seeds {
        if e.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if e.is_full() {
            break;
        }
        for g in gens {
            let w = g.apply(&v);
            if e.insert(&w) {
                queue.push(w);
            }
        }
    }
    e.into_subspace()
}
