//! Exact linear algebra over prime fields.

mod bitmat;
mod echelon;
mod enumerate;
mod field;
mod matrix;
mod poly;
mod subspace;

pub use bitmat::BitMatrix;
pub use enumerate::{
    combinations, enumerate_injections, enumerate_invertibles, enumerate_maps, enumerate_subspaces,
    enumerate_subspaces_of_dim, gaussian_binomial, gl_order, map_count,
};
pub use field::FieldPrime;
pub use matrix::{kernel_space, preimage, rref, LinearMap, Matrix};
pub use subspace::{pivot_complement, Subspace};
pub use echelon::{spin, Echelon};
pub use poly::{char_poly, factor, Poly};
