use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::{VecFunctor, VecFunctorRef};
use crate::elcat::{ElCategory, Morphism, ObjId, Window};
use crate::error::Result;
use crate::gf::Matrix;

/// Functors on `F_p`-vector spaces that are lifted along the forgetful
/// functor `(W, psi) -> W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VfBuiltin {
    /// `W -> W^{⊗n}`.
    Tensor(usize),
    /// `W -> F_p^{Hom(W, F_p^v)}`.
    Injective(usize),
}

pub struct ForgetfulLift {
    cat: Arc<ElCategory>,
    window: Window,
    kind: VfBuiltin,
}

impl ForgetfulLift {
    pub fn new(cat: Arc<ElCategory>, window: Window, kind: VfBuiltin) -> Self {
        ForgetfulLift { cat, window, kind }
    }
}

pub fn forgetful_lift(cat: &Arc<ElCategory>, kind: VfBuiltin) -> VecFunctorRef {
    Arc::new(ForgetfulLift::new(cat.clone(), cat.full_window(), kind))
}

impl VecFunctor for ForgetfulLift {
    fn category(&self) -> &Arc<ElCategory> {
        &self.cat
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        let d = self.cat.object(o).dim;
        match self.kind {
            VfBuiltin::Tensor(n) => d.pow(n as u32),
            VfBuiltin::Injective(v) => (self.cat.field().order() as usize).pow((d * v) as u32),
        }
    }
    fn act(&self, m: &Morphism) -> Matrix {
        match self.kind {
            VfBuiltin::Tensor(n) => m.map.kron_power(n),
            VfBuiltin::Injective(v) => {
                let f = self.cat.field();
                let rows = self.dim_at(m.dst);
                let mut out = Matrix::zeros(f, rows, self.dim_at(m.src));
                for i in 0..rows {
                    let phi = Matrix::from_index(f, v, m.map.rows(), i as u64);
                    out.set(i, phi.mul(&m.map).index() as usize, 1);
                }
                out
            }
        }
    }
    fn name(&self) -> String {
        match self.kind {
            VfBuiltin::Tensor(n) => format!("T^{n}"),
            VfBuiltin::Injective(v) => format!("I_{v}"),
        }
    }
}

/// `F_p^dim` everywhere, every morphism acting by the identity.
pub struct ConstantFunctor {
    cat: Arc<ElCategory>,
    window: Window,
    dim: usize,
}

impl ConstantFunctor {
    pub fn new(cat: Arc<ElCategory>, window: Window, dim: usize) -> Self {
        ConstantFunctor { cat, window, dim }
    }
}

impl VecFunctor for ConstantFunctor {
    fn category(&self) -> &Arc<ElCategory> {
        &self.cat
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, _: ObjId) -> usize {
        self.dim
    }
    fn act(&self, _: &Morphism) -> Matrix {
        Matrix::identity(self.cat.field(), self.dim)
    }
    fn name(&self) -> String {
        format!("const F_p^{}", self.dim)
    }
}

type HomBasis = (Vec<Matrix>, HashMap<Matrix, usize>);

fn hom_basis(cat: &ElCategory, a: ObjId, b: ObjId) -> HomBasis {
    let list = cat.skeleton_homs(a, b).expect("hom-set within budget");
    let index = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    (list, index)
}

/// `a -> F_p^{Hom(a, o)}`.
pub struct InjectiveCogen {
    cat: Arc<ElCategory>,
    window: Window,
    target: ObjId,
    bases: Vec<OnceLock<HomBasis>>,
}

impl InjectiveCogen {
    pub fn new(cat: Arc<ElCategory>, window: Window, target: ObjId) -> Self {
        let n = cat.objects().len();
        InjectiveCogen {
            cat,
            window,
            target,
            bases: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }
    fn basis(&self, a: ObjId) -> &HomBasis {
        self.bases[a].get_or_init(|| hom_basis(&self.cat, a, self.target))
    }
    pub fn target(&self) -> ObjId {
        self.target
    }
}

pub fn injective_cogen(cat: &Arc<ElCategory>, target: ObjId) -> Result<VecFunctorRef> {
    let w = cat.full_window();
    for a in cat.window_objects(w) {
        cat.budget().check_maps(cat.hom_count(a, target))?;
    }
    Ok(Arc::new(InjectiveCogen::new(cat.clone(), w, target)))
}

impl VecFunctor for InjectiveCogen {
    fn category(&self) -> &Arc<ElCategory> {
        &self.cat
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.basis(o).0.len()
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let (src, _) = self.basis(m.src);
        let (dst, _) = self.basis(m.dst);
        let (_, src_index) = self.basis(m.src);
        let mut out = Matrix::zeros(self.cat.field(), dst.len(), src.len());
        for (i, b) in dst.iter().enumerate() {
            let j = src_index[&b.mul(&m.map)];
            out.set(i, j, 1);
        }
        out
    }
    fn name(&self) -> String {
        format!("I[{}]", self.target)
    }
}

/// `a -> F_p[Hom(o, a)]`.
pub struct ProjectiveGen {
    cat: Arc<ElCategory>,
    window: Window,
    source: ObjId,
    bases: Vec<OnceLock<HomBasis>>,
}

impl ProjectiveGen {
    pub fn new(cat: Arc<ElCategory>, window: Window, source: ObjId) -> Self {
        let n = cat.objects().len();
        ProjectiveGen {
            cat,
            window,
            source,
            bases: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }
    fn basis(&self, a: ObjId) -> &HomBasis {
        self.bases[a].get_or_init(|| hom_basis(&self.cat, self.source, a))
    }
}

pub fn projective_gen(cat: &Arc<ElCategory>, source: ObjId) -> Result<VecFunctorRef> {
    let w = cat.full_window();
    for a in cat.window_objects(w) {
        cat.budget().check_maps(cat.hom_count(source, a))?;
    }
    Ok(Arc::new(ProjectiveGen::new(cat.clone(), w, source)))
}

impl VecFunctor for ProjectiveGen {
    fn category(&self) -> &Arc<ElCategory> {
        &self.cat
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.basis(o).0.len()
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let (src, _) = self.basis(m.src);
        let (dst, dst_index) = self.basis(m.dst);
        let mut out = Matrix::zeros(self.cat.field(), dst.len(), src.len());
        for (j, b) in src.iter().enumerate() {
            out.set(dst_index[&m.map.mul(b)], j, 1);
        }
        out
    }
    fn name(&self) -> String {
        format!("P[{}]", self.source)
    }
}

pub struct DirectSum {
    parts: Vec<VecFunctorRef>,
    window: Window,
}

impl DirectSum {
    pub fn new(parts: Vec<VecFunctorRef>) -> Self {
        assert!(!parts.is_empty());
        let window = parts.iter().map(|p| p.window()).reduce(Window::meet).unwrap();
        DirectSum { parts, window }
    }
    pub fn parts(&self) -> &[VecFunctorRef] {
        &self.parts
    }
}

impl VecFunctor for DirectSum {
    fn category(&self) -> &Arc<ElCategory> {
        self.parts[0].category()
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.parts.iter().map(|p| p.dim_at(o)).sum()
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let f = self.category().field();
        self.parts
            .iter()
            .fold(Matrix::zeros(f, 0, 0), |acc, p| acc.block_diag(&p.act(m)))
    }
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        names.join(" + ")
    }
}

/// The same functor on a smaller window.
pub struct Restrict {
    inner: VecFunctorRef,
    window: Window,
}

impl Restrict {
    pub fn new(inner: VecFunctorRef, window: Window) -> Self {
        let window = inner.window().meet(window);
        Restrict { inner, window }
    }
}

impl VecFunctor for Restrict {
    fn category(&self) -> &Arc<ElCategory> {
        self.inner.category()
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.inner.dim_at(o)
    }
    fn act(&self, m: &Morphism) -> Matrix {
        self.inner.act(m)
    }
    fn name(&self) -> String {
        self.inner.name()
    }
}
