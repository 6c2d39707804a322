//! Finite-set-valued contravariant functors on `F_p` vector spaces, up to a
//! dimension cap.

mod builtin;
mod kernel;
mod lattice;
mod table;
mod validate;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gf::{FieldPrime, Matrix};

pub use builtin::{
    Component, Constant, DisjointUnion, OrbitFunctor, Representable, SubsetFunctor, SubspaceFunctor,
};
pub use kernel::{
    all_kernels, boxplus, boxplus_is_unique, check_noetherian, check_weak_noetherian, epsilon,
    is_connected, is_regular, kernel_of, regular_set, split_components, tilde,
    NoetherianReport, Tilde, WeakNoetherianCounterexample, WeakNoetherianReport,
};
pub use lattice::{subspace_lattice, LatticeEntry};
pub use table::{parse_sfunctor, BuiltinSpec, SFunctorFile, TableFunctor};
pub use validate::{category_generators, validate, CheckMode, ValidationReport, Violation};

/// A contravariant functor `S` from `F_p`-vector spaces of dimension at most
/// `cap` to finite sets. Elements of `S(F_p^d)` are `0..size(d)`.
pub trait SetFunctor: Send + Sync {
    fn field(&self) -> FieldPrime;
    fn cap(&self) -> usize;
    fn size(&self, d: usize) -> u32;
    /// `alpha^* s` for `alpha: F_p^n -> F_p^m` given as an `m x n` matrix and
    /// `s` in `S(F_p^m)`; the result lies in `S(F_p^n)`.
    fn pull(&self, alpha: &Matrix, s: u32) -> u32;
    fn name(&self) -> String;
}

pub type SetFunctorRef = Arc<dyn SetFunctor>;

impl fmt::Debug for dyn SetFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(cap {})", self.name(), self.cap())
    }
}

/// An element `s` of `S(F_p^dim)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SElement {
    pub dim: usize,
    pub index: u32,
}

impl SElement {
    pub fn new(dim: usize, index: u32) -> Self {
        SElement { dim, index }
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({})[{}]", self.dim, self.index)
    }
}

/// `alpha^* s` with dimension bookkeeping.
pub fn pull_element(s: &dyn SetFunctor, alpha: &Matrix, x: SElement) -> SElement {
    debug_assert_eq!(alpha.rows(), x.dim);
    SElement::new(alpha.cols(), s.pull(alpha, x.index))
}
