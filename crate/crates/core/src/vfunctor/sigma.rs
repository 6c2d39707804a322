use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::delta::cross_effect_sigma;
use super::{VecFunctor, VecFunctorRef};
use crate::elcat::{ElCategory, Morphism, ObjId, Window};
use crate::error::{Error, Result};
use crate::gf::{Matrix, Subspace};
use crate::modrep::{place_permutation, symmetric_group, FiniteGroup, GroupModule};

/// A functor from Rector's category to `F_p[S_n]`-modules, by class.
pub trait SigmaNFunctor: Send + Sync {
    fn category(&self) -> &Arc<ElCategory>;
    fn n(&self) -> usize;
    /// Classes of dimension at most this carry values.
    fn class_dim_bound(&self) -> usize;
    fn dim_at(&self, c: usize) -> usize;
    /// `M(f)` for `f` in `hom_R(c, c2)`.
    fn act_r(&self, c: usize, c2: usize, f: &Matrix) -> Matrix;
    /// The `i`-th adjacent transposition `(i, i+1)` acting on `M(c)`.
    fn sigma(&self, c: usize, i: usize) -> Matrix;
    fn name(&self) -> String {
        "M".into()
    }
}

pub type SigmaNFunctorRef = Arc<dyn SigmaNFunctor>;

pub fn defined_classes(m: &dyn SigmaNFunctor) -> Vec<usize> {
    let sk = m.category().skeleton();
    (0..sk.len()).filter(|&c| sk.class(c).dim <= m.class_dim_bound()).collect()
}

/// A module over `Aut(c) x S_n` placed at a single class, zero elsewhere.
pub struct ModuleOnClass {
    cat: Arc<ElCategory>,
    class: usize,
    n: usize,
    module: GroupModule,
    aut_index: HashMap<Matrix, usize>,
}

impl ModuleOnClass {
    /// `Aut(c) x S_n`, elements `(a, s)` indexed `a * n! + s`.
    pub fn group(cat: &ElCategory, class: usize, n: usize) -> Arc<FiniteGroup> {
        let aut = cat.skeleton().class(class).group.clone();
        Arc::new(FiniteGroup::product(aut, symmetric_group(n).group().clone()))
    }

    pub fn new(cat: Arc<ElCategory>, class: usize, n: usize, module: GroupModule) -> Result<Self> {
        if **module.group() != *Self::group(&cat, class, n) {
            return Err(Error::InvalidModule(format!("module is not over Aut x S_{n} of class {class}")));
        }
        if module.field() != cat.field() {
            return Err(Error::InvalidModule("field mismatch".into()));
        }
        let aut_index = cat
            .skeleton()
            .class(class)
            .aut
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(ModuleOnClass {
            cat,
            class,
            n,
            module,
            aut_index,
        })
    }

    /// Inflates an `S_n`-module along the projection `Aut(c) x S_n -> S_n`.
    pub fn from_symmetric(cat: Arc<ElCategory>, class: usize, n: usize, m: &GroupModule) -> Result<Self> {
        let group = Self::group(&cat, class, n);
        let sym = symmetric_group(n);
        let order = sym.group().order();
        let els = (0..group.order()).map(|g| m.matrix(g % order).clone()).collect();
        let module = GroupModule::from_elements(group, cat.field(), m.dim(), els)?;
        ModuleOnClass::new(cat, class, n, module)
    }

    pub fn class(&self) -> usize {
        self.class
    }
    pub fn module(&self) -> &GroupModule {
        &self.module
    }
}

impl SigmaNFunctor for ModuleOnClass {
    fn category(&self) -> &Arc<ElCategory> {
        &self.cat
    }
    fn n(&self) -> usize {
        self.n
    }
    fn class_dim_bound(&self) -> usize {
        self.cat.cap()
    }
    fn dim_at(&self, c: usize) -> usize {
        if c == self.class {
            self.module.dim()
        } else {
            0
        }
    }
    fn act_r(&self, c: usize, c2: usize, f: &Matrix) -> Matrix {
        if c == self.class && c2 == self.class {
            let order = symmetric_group(self.n).group().order();
            let s_id = symmetric_group(self.n).group().identity();
            self.module.matrix(self.aut_index[f] * order + s_id).clone()
        } else {
            Matrix::zeros(self.cat.field(), self.dim_at(c2), self.dim_at(c))
        }
    }
    fn sigma(&self, c: usize, i: usize) -> Matrix {
        if c != self.class {
            return Matrix::zeros(self.cat.field(), 0, 0);
        }
        let sym = symmetric_group(self.n);
        let g = self.module.group();
        let a_id = g.factors().unwrap().0.identity();
        self.module.matrix(a_id * sym.group().order() + sym.group().generators()[i]).clone()
    }
    fn name(&self) -> String {
        format!("M[class {}, dim {}]", self.class, self.module.dim())
    }
}

struct CrossData {
    big: ObjId,
    space: Subspace,
    sigma: Vec<Matrix>,
}

/// `Δ̄^n F` restricted to Rector's category, realized as the `n`-th cross
/// effect `cr_n F(c; 1, ..., 1)` with its permutation action.
pub struct DeltaBarN {
    inner: VecFunctorRef,
    n: usize,
    data: Vec<OnceLock<CrossData>>,
}

impl DeltaBarN {
    pub fn new(inner: VecFunctorRef, n: usize) -> Result<Self> {
        let w = inner.window();
        if w.total < n {
            return Err(Error::OutsideWindow(format!("Δ̄^{n} needs total dimension at least {n}")));
        }
        let k = inner.category().skeleton().len();
        Ok(DeltaBarN {
            inner,
            n,
            data: (0..k).map(|_| OnceLock::new()).collect(),
        })
    }

    fn data(&self, c: usize) -> &CrossData {
        self.data[c].get_or_init(|| {
            let cat = self.inner.category();
            let o = cat.obj(c, 0).unwrap();
            let (big, space, sigma) = cross_effect_sigma(self.inner.as_ref(), o, self.n).expect("class within the window");
            CrossData { big, space, sigma }
        })
    }

    /// The value at `c` as a subspace of `F(c, n)`.
    pub fn subspace(&self, c: usize) -> &Subspace {
        &self.data(c).space
    }
    pub fn object(&self, c: usize) -> ObjId {
        self.data(c).big
    }
    pub fn inner(&self) -> &VecFunctorRef {
        &self.inner
    }
}

impl SigmaNFunctor for DeltaBarN {
    fn category(&self) -> &Arc<ElCategory> {
        self.inner.category()
    }
    fn n(&self) -> usize {
        self.n
    }
    fn class_dim_bound(&self) -> usize {
        let w = self.inner.window();
        w.class_dim.min(w.total - self.n)
    }
    fn dim_at(&self, c: usize) -> usize {
        self.subspace(c).dim()
    }
    fn act_r(&self, c: usize, c2: usize, f: &Matrix) -> Matrix {
        let cat = self.category();
        let field = cat.field();
        let m = Morphism {
            src: self.object(c),
            dst: self.object(c2),
            map: f.block_diag(&Matrix::identity(field, self.n)),
        };
        let a = self.inner.act(&m);
        let (s, t) = (self.subspace(c), self.subspace(c2));
        let cols: Vec<Vec<u8>> = (0..s.dim())
            .map(|i| t.coordinates(&a.apply(s.basis().row(i))).expect("cross effects are preserved"))
            .collect();
        Matrix::from_columns(field, t.dim(), &cols)
    }
    fn sigma(&self, c: usize, i: usize) -> Matrix {
        self.data(c).sigma[i].clone()
    }
    fn name(&self) -> String {
        format!("Δ̄^{}({})", self.n, self.inner.name())
    }
}

struct TensorData {
    /// `m`: dimension of `M(c)`; the plain tensor space has dim `k^n * m`.
    m: usize,
    quotient: Matrix,
    section: Matrix,
}

/// `E(T^n ⊗_{S_n} M)`: at `(c, k)` the coinvariants of `(F_p^k)^{⊗n} ⊗ M(c)`
/// under `(v . s) ⊗ m = v ⊗ (s . m)`.
pub struct TensorSigma {
    m: SigmaNFunctorRef,
    window: Window,
    data: Vec<OnceLock<TensorData>>,
}

impl TensorSigma {
    pub fn new(m: SigmaNFunctorRef, window: Window) -> Self {
        let cat = m.category().clone();
        let window = Window::new(window.total.min(cat.cap()), window.class_dim.min(m.class_dim_bound()));
        TensorSigma {
            data: (0..cat.objects().len()).map(|_| OnceLock::new()).collect(),
            m,
            window,
        }
    }

    pub fn module(&self) -> &SigmaNFunctorRef {
        &self.m
    }
    pub fn n(&self) -> usize {
        self.m.n()
    }

    fn data(&self, o: ObjId) -> &TensorData {
        self.data[o].get_or_init(|| {
            let cat = self.m.category();
            let so = cat.object(o);
            let n = self.m.n();
            let field = cat.field();
            let md = self.m.dim_at(so.class);
            let t = so.k.pow(n as u32);
            let total = t * md;
            let sym = symmetric_group(n);
            let mut rel = Matrix::zeros(field, total, 0);
            for (i, &s) in sym.group().generators().iter().enumerate() {
                let p = place_permutation(field, so.k, sym.perm(s));
                let lhs = p.kron(&Matrix::identity(field, md));
                let rhs = Matrix::identity(field, t).kron(&self.m.sigma(so.class, i));
                rel = rel.hstack(&lhs.sub(&rhs));
            }
            let r = rel.image();
            TensorData {
                m: md,
                quotient: r.quotient_map(),
                section: r.section(),
            }
        })
    }

    /// Projection from the plain tensor space at `o` onto the value.
    pub fn quotient_map(&self, o: ObjId) -> &Matrix {
        &self.data(o).quotient
    }
    /// Lifts value coordinates to plain tensors (pivot-complement section).
    pub fn section(&self, o: ObjId) -> &Matrix {
        &self.data(o).section
    }
    pub fn module_dim(&self, o: ObjId) -> usize {
        self.data(o).m
    }
}

impl VecFunctor for TensorSigma {
    fn category(&self) -> &Arc<ElCategory> {
        self.m.category()
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.data(o).quotient.rows()
    }
    fn act(&self, mo: &Morphism) -> Matrix {
        let cat = self.category();
        let b = cat.blocks(mo);
        let (sa, sb) = (cat.object(mo.src), cat.object(mo.dst));
        let mf = self.m.act_r(sa.class, sb.class, &b.f);
        let plain = b.h.kron_power(self.m.n()).kron(&mf);
        self.data(mo.dst).quotient.mul(&plain).mul(&self.data(mo.src).section)
    }
    fn name(&self) -> String {
        format!("T^{} ⊗ {}", self.m.n(), self.m.name())
    }
}
