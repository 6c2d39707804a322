//! Set-valued functors on finite-dimensional `F_p` vector spaces, their
//! categories of elements, and the representation theory needed to classify
//! simple functors on them.

pub mod config;
pub mod elcat;
pub mod error;
pub mod gf;
pub mod modrep;
pub mod sfunctor;
pub mod simples;
pub mod vfunctor;

pub use config::Budget;
pub use error::{Error, Result};
pub use gf::{FieldPrime, LinearMap, Matrix, Subspace};
