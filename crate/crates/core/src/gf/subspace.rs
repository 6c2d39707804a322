use super::field::FieldPrime;
use super::matrix::Matrix;

/// A subspace of `F_p^n` stored by its reduced row-echelon basis. Equality is
/// equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldPrime, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldPrime, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The row space of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0..pivots.len(), 0..m.cols());
        Subspace { basis, pivots }
    }

    pub fn span(field: FieldPrime, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        Self::from_rows(&Matrix::from_row_vectors(field, ambient, vectors))
    }

    /// Builds a subspace from rows already in reduced echelon form.
    pub(crate) fn from_rref_unchecked(basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(Subspace::from_rows(&basis).basis, basis);
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> FieldPrime {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }
    /// Basis rows (`dim x ambient`), in RREF.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Inclusion `F_p^dim -> F_p^ambient` whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let c: Vec<u8> = self.pivots.iter().map(|&j| v[j]).collect();
        let back = self.basis.transpose().apply(&c);
        (back == v).then_some(c)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // v in both  <=>  quotient maps of both kill v
        let q = self.quotient_map().vstack(&other.quotient_map());
        q.kernel()
    }

    /// Standard basis vectors at non-pivot coordinates: the canonical complement.
    pub fn pivot_complement(&self) -> Subspace {
        let f = self.field();
        let n = self.ambient_dim();
        let np = self.non_pivots();
        let mut m = Matrix::zeros(f, np.len(), n);
        for (i, &j) in np.iter().enumerate() {
            m.set(i, j, 1);
        }
        Subspace {
            basis: m,
            pivots: np,
        }
    }

    /// The projection `F_p^n -> F_p^(n-dim)` with kernel `self`, reading off
    /// coordinates along the pivot complement.
    pub fn quotient_map(&self) -> Matrix {
        let f = self.field();
        let n = self.ambient_dim();
        let np = self.non_pivots();
        let mut m = Matrix::zeros(f, np.len(), n);
        for (r, &j) in np.iter().enumerate() {
            m.set(r, j, 1);
            for (i, &c) in self.pivots.iter().enumerate() {
                m.set(r, c, f.neg(self.basis.get(i, j)));
            }
        }
        m
    }

    /// The section `F_p^(n-dim) -> F_p^n` onto the pivot complement;
    /// `quotient_map * section = id`.
    pub fn section(&self) -> Matrix {
        self.pivot_complement().inclusion()
    }

    /// Image of the subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::from_rows(&m.mul(&self.inclusion()).transpose())
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subspace", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim())?;
        st.serialize_field("basis", &self.basis.to_rows())?;
        st.end()
    }
}

/// The canonical complement of `u`.
pub fn pivot_complement(u: &Subspace) -> Subspace {
    u.pivot_complement()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        let f = FieldPrime::TWO;
        assert_eq!(pivot_complement(&Subspace::zero(f, 2)), Subspace::full(f, 2));
        assert_eq!(pivot_complement(&Subspace::full(f, 2)), Subspace::zero(f, 2));
        let u = Subspace::span(f, 2, &[vec![1, 1]]);
        assert_eq!(u.pivots(), &[0]);
        assert_eq!(pivot_complement(&u), Subspace::span(f, 2, &[vec![0, 1]]));
    }

    #[test]
    fn quotient_and_section() {
        let f = FieldPrime::new(3).unwrap();
        let u = Subspace::span(f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let q = u.quotient_map();
        let s = u.section();
        assert!(q.mul(&s).is_identity());
        assert!(q.mul(&u.inclusion()).is_zero());
        assert_eq!(q.kernel(), u);
    }

    #[test]
    fn coordinates_and_intersection() {
        let f = FieldPrime::TWO;
        let a = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(&b), Subspace::span(f, 3, &[vec![0, 1, 0]]));
        assert_eq!(a.sum(&b), Subspace::full(f, 3));
        assert_eq!(a.coordinates(&[1, 1, 0]), Some(vec![1, 1]));
        assert_eq!(a.coordinates(&[1, 1, 1]), None);
    }
}
