//! The category of elements of a set functor and Rector's full subcategory
//! of regular pairs, both in canonical skeletal form.

mod category;
mod skeleton;

use serde::Serialize;

use crate::gf::Matrix;
use crate::sfunctor::SElement;

pub use category::{Blocks, Decomposition, ElCategory, Morphism, ObjId, SkelObject, Window};
pub use skeleton::{
    build_rector_skeleton, ClassReport, InjectivityReport, RectorClass, RectorReport, RectorSkeleton,
};

/// A pair `(F_p^dim, elt)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElObject {
    pub dim: usize,
    pub elt: SElement,
}

impl ElObject {
    pub fn new(elt: SElement) -> Self {
        ElObject { dim: elt.dim, elt }
    }
}

/// `map: src -> dst` with `map^* dst.elt = src.elt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ElMorphism {
    pub src: ElObject,
    pub dst: ElObject,
    pub map: Matrix,
}

#[cfg(test)]
mod tests;
