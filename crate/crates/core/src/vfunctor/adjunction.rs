use std::sync::Arc;

use serde::Serialize;

use super::nat::{hom_space, hom_space_sigma, is_natural, NatTrans, SigmaNatTrans};
use super::sigma::{defined_classes, DeltaBarN, SigmaNFunctor, SigmaNFunctorRef, TensorSigma};
use super::{VecFunctor, VecFunctorRef};
use crate::elcat::{ElCategory, Morphism, ObjId, Window};
use crate::error::{Error, Result};
use crate::gf::Matrix;

/// Position of `e_{t_0} ⊗ ... ⊗ e_{t_{n-1}}` in `(F_p^k)^{⊗n}`, first factor
/// most significant.
fn tensor_index(t: &[usize], k: usize) -> usize {
    t.iter().fold(0, |acc, &ti| acc * k + ti)
}

fn empty(cat: &ElCategory) -> Vec<Matrix> {
    vec![Matrix::zeros(cat.field(), 0, 0); cat.objects().len()]
}

/// The counit `T^n ⊗ Δ̄^n F -> F` with the functors it connects.
pub struct Counit {
    pub module: Arc<DeltaBarN>,
    pub tensor: Arc<TensorSigma>,
    pub eta: NatTrans,
}

/// The unit `M -> Δ̄^n (T^n ⊗ M)`.
pub struct Unit {
    pub delta: Arc<DeltaBarN>,
    pub eta: SigmaNatTrans,
}

fn counit_on(module: Arc<DeltaBarN>, window: Window) -> Result<Counit> {
    let f = module.inner().clone();
    let cat = f.category().clone();
    let field = cat.field();
    let n = module.n();
    let tensor = Arc::new(TensorSigma::new(module.clone() as SigmaNFunctorRef, window));
    let mut comps = empty(&cat);
    for o in cat.window_objects(tensor.window()) {
        let so = cat.object(o);
        let (c, k) = (so.class, so.k);
        let r = so.dim - k;
        let cr = module.subspace(c);
        let src = module.object(c);
        let md = cr.dim();
        let mut phi = Matrix::zeros(field, f.dim_at(o), k.pow(n as u32) * md);
        let mut t = vec![0usize; n];
        while phi.cols() > 0 {
            let mut a = Matrix::zeros(field, k, n);
            for (i, &ti) in t.iter().enumerate() {
                a.set(ti, i, 1);
            }
            let m = Morphism {
                src,
                dst: o,
                map: Matrix::identity(field, r).block_diag(&a),
            };
            let img = f.act(&m).mul(&cr.basis().transpose());
            phi.paste(0, tensor_index(&t, k) * md, &img);
            // next multi-index, last factor fastest
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                t[i] += 1;
                if t[i] < k {
                    break;
                }
                t[i] = 0;
            }
            if t.iter().all(|&x| x == 0) {
                break;
            }
        }
        let eta = phi.mul(tensor.section(o));
        if eta.mul(tensor.quotient_map(o)) != phi {
            return Err(Error::InvalidFunctor(format!("counit does not factor through coinvariants at object {o}")));
        }
        comps[o] = eta;
    }
    Ok(Counit {
        module,
        tensor,
        eta: NatTrans { components: comps },
    })
}

/// The counit of the adjunction between `T^n ⊗_{S_n} -` and `Δ̄^n`: on
/// `e_{t_0} ⊗ ... ⊗ e_{t_{n-1}} ⊗ x` it is `F(1 ⊕ A_t)(x)`, where
/// `A_t e_i = e_{t_i}` and `x` lies in the cross effect at `(c, n)`.
pub fn counit(f: &VecFunctorRef, n: usize) -> Result<Counit> {
    let module = Arc::new(DeltaBarN::new(f.clone(), n)?);
    counit_on(module, f.window())
}

/// `m -> [e_0 ⊗ e_1 ⊗ ... ⊗ e_{n-1} ⊗ m]` at `(c, n)`, landing in the cross
/// effect; an isomorphism onto `Δ̄^n(T^n ⊗ M)`.
pub fn unit(t: &Arc<TensorSigma>) -> Result<Unit> {
    let cat = t.category().clone();
    let field = cat.field();
    let n = t.n();
    let delta = Arc::new(DeltaBarN::new(t.clone() as VecFunctorRef, n)?);
    let mut comps = vec![Matrix::zeros(field, 0, 0); cat.skeleton().len()];
    let idx = tensor_index(&(0..n).collect::<Vec<_>>(), n);
    for c in defined_classes(delta.as_ref()) {
        let o = delta.object(c);
        let md = t.module_dim(o);
        let q = t.quotient_map(o);
        let cr = delta.subspace(c);
        let mut cols = Vec::with_capacity(md);
        for j in 0..md {
            let v = q.column(idx * md + j);
            let coords = cr
                .coordinates(&v)
                .ok_or_else(|| Error::InvalidFunctor(format!("unit leaves the cross effect at class {c}")))?;
            cols.push(coords);
        }
        comps[c] = Matrix::from_columns(field, cr.dim(), &cols);
    }
    Ok(Unit {
        delta,
        eta: SigmaNatTrans { components: comps },
    })
}

/// `Δ̄^n` of a natural transformation, on the cross effects at `(c, n)`.
pub fn delta_map(a: &DeltaBarN, b: &DeltaBarN, lambda: &NatTrans) -> SigmaNatTrans {
    let cat = a.category();
    let field = cat.field();
    let mut comps = vec![Matrix::zeros(field, 0, 0); cat.skeleton().len()];
    for c in defined_classes(a).into_iter().filter(|c| defined_classes(b).contains(c)) {
        let (sa, sb) = (a.subspace(c), b.subspace(c));
        let l = &lambda.components[a.object(c)];
        let cols: Vec<Vec<u8>> = (0..sa.dim())
            .map(|i| sb.coordinates(&l.apply(sa.basis().row(i))).expect("natural maps preserve cross effects"))
            .collect();
        comps[c] = Matrix::from_columns(field, sb.dim(), &cols);
    }
    SigmaNatTrans { components: comps }
}

/// `T^n ⊗ phi` between two tensor functors over the same `n`.
pub fn tensor_map(ta: &TensorSigma, tb: &TensorSigma, phi: &SigmaNatTrans) -> NatTrans {
    let cat = ta.category();
    let field = cat.field();
    let mut comps = empty(cat);
    for o in cat.window_objects(ta.window().meet(tb.window())) {
        let so = cat.object(o);
        let plain = Matrix::identity(field, so.k.pow(ta.n() as u32)).kron(&phi.components[so.class]);
        comps[o] = tb.quotient_map(o).mul(&plain).mul(ta.section(o));
    }
    NatTrans { components: comps }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub n: usize,
    pub window: Window,
    /// `dim Hom(T^n ⊗ M, F)`.
    pub left_dim: usize,
    /// `dim Hom_{S_n}(M, Δ̄^n F)`.
    pub right_dim: usize,
    /// Rank of `eta -> Δ̄^n(eta) . unit` on a basis of the left side.
    pub transfer_rank: usize,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.left_dim == self.right_dim && self.transfer_rank == self.left_dim
    }
}

/// Compares `Hom(T^n ⊗ M, F)` with `Hom(M, Δ̄^n F)` and checks that the
/// transfer map between them is a bijection.
pub fn adjunction_check(m: &SigmaNFunctorRef, f: &VecFunctorRef) -> Result<AdjunctionReport> {
    let n = m.n();
    let t = Arc::new(TensorSigma::new(m.clone(), f.window()));
    let left = hom_space(t.as_ref(), f.as_ref());
    let d = DeltaBarN::new(f.clone(), n)?;
    let right = hom_space_sigma(m.as_ref(), &d);
    let u = unit(&t)?;
    let field = f.category().field();
    let rows: Vec<Vec<u8>> = left
        .iter()
        .map(|eta| {
            let phi = delta_map(&u.delta, &d, eta).components;
            let u_eta = &u.eta.components;
            phi.iter().zip(u_eta).flat_map(|(p, ue)| p.mul(ue).entries().to_vec()).collect()
        })
        .collect();
    let width = rows.first().map_or(0, |r| r.len());
    Ok(AdjunctionReport {
        n,
        window: t.window(),
        left_dim: left.len(),
        right_dim: right.len(),
        transfer_rank: Matrix::from_row_vectors(field, width, &rows).rank(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub n: usize,
    /// `counit_{T^n ⊗ M} . (T^n ⊗ unit_M) = 1`.
    pub left: bool,
    /// `Δ̄^n(counit_F) . unit_{Δ̄^n F} = 1`.
    pub right: bool,
    pub objects_checked: usize,
    pub classes_checked: usize,
}

impl TriangleReport {
    pub fn holds(&self) -> bool {
        self.left && self.right
    }
}

/// Both triangle identities, the first for `T^n ⊗ M` on `window`, the second
/// for `F` (which should be polynomial of degree at most `n`).
pub fn triangle_identities(m: &SigmaNFunctorRef, f: &VecFunctorRef, window: Window) -> Result<TriangleReport> {
    let n = m.n();
    let t = Arc::new(TensorSigma::new(m.clone(), window));
    let cat = t.category().clone();
    let u = unit(&t)?;
    let c = counit_on(u.delta.clone(), t.window())?;
    let tu = tensor_map(&t, &c.tensor, &u.eta);
    let objs = cat.window_objects(t.window());
    let left = objs.iter().all(|&o| c.eta.components[o].mul(&tu.components[o]).is_identity());

    let cf = counit(f, n)?;
    let u2 = unit(&cf.tensor)?;
    let back = delta_map(&u2.delta, &cf.module, &cf.eta);
    let classes = defined_classes(u2.delta.as_ref());
    let right = classes
        .iter()
        .all(|&c| back.components[c].mul(&u2.eta.components[c]).is_identity());
    Ok(TriangleReport {
        n,
        left,
        right,
        objects_checked: objs.len(),
        classes_checked: classes.len(),
    })
}

/// `F(c, k) -> F(c, 0)` along the projection, for degree-0 `F`.
fn bar_component(f: &dyn VecFunctor, o: ObjId) -> Matrix {
    let cat = f.category();
    let so = cat.object(o);
    let r = so.dim - so.k;
    let field = cat.field();
    let m = Morphism {
        src: o,
        dst: cat.obj(so.class, 0).expect("class object"),
        map: Matrix::identity(field, r).hstack(&Matrix::zeros(field, r, so.k)),
    };
    f.act(&m)
}

/// `F̄(c, k) = F(c, 0)`, acting through the Rector block of each morphism.
struct BarExtension {
    inner: VecFunctorRef,
}

impl VecFunctor for BarExtension {
    fn category(&self) -> &Arc<ElCategory> {
        self.inner.category()
    }
    fn window(&self) -> Window {
        self.inner.window()
    }
    fn dim_at(&self, o: ObjId) -> usize {
        let cat = self.category();
        self.inner.dim_at(cat.obj(cat.object(o).class, 0).expect("class object"))
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let cat = self.category();
        let b = cat.blocks(m);
        let mm = Morphism {
            src: cat.obj(cat.object(m.src).class, 0).expect("class object"),
            dst: cat.obj(cat.object(m.dst).class, 0).expect("class object"),
            map: b.f,
        };
        self.inner.act(&mm)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BarExtensionReport {
    pub window: Window,
    pub objects_checked: usize,
    /// Every component `F(c, k) -> F(c, 0)` is invertible.
    pub invertible: bool,
    pub natural: bool,
    pub witness: Option<String>,
}

impl BarExtensionReport {
    pub fn holds(&self) -> bool {
        self.invertible && self.natural
    }
}

/// Restricts `F` to Rector's category, extends back by `F̄(c, k) = F(c, 0)`
/// and checks that the projections give a natural isomorphism `F -> F̄`.
pub fn bar_extension_check(f: &VecFunctorRef) -> BarExtensionReport {
    let cat = f.category();
    let objs = cat.window_objects(f.window());
    let mut comps = empty(cat);
    let mut out = BarExtensionReport {
        window: f.window(),
        objects_checked: objs.len(),
        invertible: true,
        natural: false,
        witness: None,
    };
    for &o in &objs {
        comps[o] = bar_component(f.as_ref(), o);
        if comps[o].inverse().is_none() {
            out.invertible = false;
            out.witness = Some(format!("projection at object {o} is not invertible"));
            return out;
        }
    }
    let bar = BarExtension { inner: f.clone() };
    match is_natural(f.as_ref(), &bar, &NatTrans { components: comps }) {
        None => out.natural = true,
        Some(m) => out.witness = Some(format!("not natural along {} : {} -> {}", m.map.key(), m.src, m.dst)),
    }
    out
}
