use std::sync::Arc;

use serde::Serialize;

use super::nat::{is_natural, NatTrans};
use super::{VecFunctor, VecFunctorRef};
use crate::elcat::{ElCategory, Morphism, ObjId, Window};
use crate::error::Result;
use crate::gf::{enumerate_maps, Matrix};

/// A functor on `R_S x V^f`, valued in vector spaces: `(c, v) -> G(c, v)`.
/// Defined where the class dimension is at most `window.class_dim` and
/// `dim c + v <= window.total`.
pub trait RVFunctor: Send + Sync {
    fn category(&self) -> &Arc<ElCategory>;
    fn window(&self) -> Window;
    fn dim_at(&self, c: usize, v: usize) -> usize;
    /// `G(f, h)` for `f` in `hom_R(c, c2)` and `h: F_p^v -> F_p^{v2}`.
    fn act_pair(&self, c: usize, c2: usize, f: &Matrix, h: &Matrix) -> Matrix;
    fn name(&self) -> String {
        "G".into()
    }
}

pub type RVFunctorRef = Arc<dyn RVFunctor>;

/// `O(F)((c, v)) = F(c, v)`, acting through block-diagonal maps.
pub struct OTransform {
    inner: VecFunctorRef,
}

impl OTransform {
    pub fn new(inner: VecFunctorRef) -> Self {
        OTransform { inner }
    }
    pub fn inner(&self) -> &VecFunctorRef {
        &self.inner
    }
}

impl RVFunctor for OTransform {
    fn category(&self) -> &Arc<ElCategory> {
        self.inner.category()
    }
    fn window(&self) -> Window {
        self.inner.window()
    }
    fn dim_at(&self, c: usize, v: usize) -> usize {
        self.inner.dim_at(self.category().obj(c, v).expect("object within cap"))
    }
    fn act_pair(&self, c: usize, c2: usize, f: &Matrix, h: &Matrix) -> Matrix {
        let cat = self.category();
        let m = Morphism {
            src: cat.obj(c, h.cols()).expect("object within cap"),
            dst: cat.obj(c2, h.rows()).expect("object within cap"),
            map: f.block_diag(h),
        };
        self.inner.act(&m)
    }
    fn name(&self) -> String {
        format!("O({})", self.inner.name())
    }
}

/// `E(G)(c, k) = G(c, k)`; a morphism with blocks `[[f, 0], [g, h]]` acts as
/// `G(f, h)`, so shears act trivially.
pub struct ETransform {
    inner: RVFunctorRef,
}

impl ETransform {
    pub fn new(inner: RVFunctorRef) -> Self {
        ETransform { inner }
    }
    pub fn inner(&self) -> &RVFunctorRef {
        &self.inner
    }
}

impl VecFunctor for ETransform {
    fn category(&self) -> &Arc<ElCategory> {
        self.inner.category()
    }
    fn window(&self) -> Window {
        self.inner.window()
    }
    fn dim_at(&self, o: ObjId) -> usize {
        let so = self.category().object(o);
        self.inner.dim_at(so.class, so.k)
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let cat = self.category();
        let b = cat.blocks(m);
        self.inner
            .act_pair(cat.object(m.src).class, cat.object(m.dst).class, &b.f, &b.h)
    }
    fn name(&self) -> String {
        format!("E({})", self.inner.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCheck {
    pub extends: bool,
    pub shears_checked: usize,
    pub witness: Option<String>,
    #[serde(skip)]
    pub extension: Option<NatTrans>,
}

/// Decides whether `lambda: G -> O(F)` (components indexed by the objects
/// `(c, v)`) extends to a natural transformation `E(G) -> F`. The condition
/// is `F(s) lambda = lambda` for every shear `s = [[1, 0], [g, 1]]` in the
/// window, plus naturality along block-diagonal maps. Every morphism is a
/// shear composed with a block-diagonal map, so these suffice.
pub fn extendable(g: &RVFunctorRef, f: &VecFunctorRef, lambda: &NatTrans) -> Result<ExtensionCheck> {
    let cat = f.category();
    let field = cat.field();
    let w = f.window().meet(g.window());
    let mut out = ExtensionCheck {
        extends: false,
        shears_checked: 0,
        witness: None,
        extension: None,
    };
    let eg: VecFunctorRef = Arc::new(ETransform::new(g.clone()));
    for o in cat.window_objects(w) {
        let so = cat.object(o);
        let r = so.dim - so.k;
        for shear_g in enumerate_maps(field, r, so.k, cat.budget())? {
            let map = cat.assemble(&Matrix::identity(field, r), &shear_g, &Matrix::identity(field, so.k));
            let s = Morphism { src: o, dst: o, map };
            out.shears_checked += 1;
            if f.act(&s).mul(&lambda.components[o]) != lambda.components[o] {
                out.witness = Some(format!("shear {} at object {o}", s.map.key()));
                return Ok(out);
            }
        }
    }
    for m in cat.generators(w).iter().filter(|m| cat.blocks(m).g.is_zero()) {
        if f.act(m).mul(&lambda.components[m.src]) != lambda.components[m.dst].mul(&eg.act(m)) {
            out.witness = Some(format!("block-diagonal {} : {} -> {}", m.map.key(), m.src, m.dst));
            return Ok(out);
        }
    }
    let ext = NatTrans {
        components: (0..cat.objects().len())
            .map(|o| {
                if cat.in_window(o, w) {
                    lambda.components[o].clone()
                } else {
                    Matrix::zeros(field, 0, 0)
                }
            })
            .collect(),
    };
    let restricted = super::builtin::Restrict::new(eg, w);
    if let Some(m) = is_natural(&restricted, f.as_ref(), &ext) {
        out.witness = Some(format!("extension not natural at {} : {} -> {}", m.map.key(), m.src, m.dst));
        return Ok(out);
    }
    out.extends = true;
    out.extension = Some(ext);
    Ok(out)
}
