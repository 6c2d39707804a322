use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::sub::SubFunctor;
use super::{window_objects, VecFunctor, VecFunctorRef};
use crate::elcat::{ElCategory, Morphism, ObjId, Window};
use crate::error::{Error, Result};
use crate::gf::{Matrix, Subspace};
use crate::modrep::{permutation_matrix, symmetric_group};

/// `Δ̄F(c, k) = ker F(c, k+1) -> F(c, k)`, induced by the projection that
/// forgets the last coordinate; morphisms act through `alpha ⊕ 1`.
pub struct DeltaBar {
    inner: VecFunctorRef,
    window: Window,
    kernels: Vec<OnceLock<Subspace>>,
}

impl DeltaBar {
    pub fn new(inner: VecFunctorRef) -> Result<Self> {
        let window = inner
            .window()
            .shrink(1)
            .ok_or_else(|| Error::OutsideWindow("difference functor of a functor on an empty window".into()))?;
        let n = inner.category().objects().len();
        Ok(DeltaBar {
            inner,
            window,
            kernels: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn inner(&self) -> &VecFunctorRef {
        &self.inner
    }

    fn up(&self, o: ObjId) -> ObjId {
        let cat = self.inner.category();
        let so = cat.object(o);
        cat.obj(so.class, so.k + 1).expect("object one dimension up lies in the window")
    }

    /// `Δ̄F(o)` as a subspace of `F(o ⊕ k)`.
    pub fn kernel(&self, o: ObjId) -> &Subspace {
        self.kernels[o].get_or_init(|| {
            let cat = self.inner.category();
            let drop = cat.drop_last(self.up(o)).expect("k + 1 >= 1");
            self.inner.act(&drop).kernel()
        })
    }
}

fn lift(cat: &ElCategory, m: &Morphism) -> Morphism {
    let (so, sd) = (cat.object(m.src), cat.object(m.dst));
    let f = cat.field();
    Morphism {
        src: cat.obj(so.class, so.k + 1).unwrap(),
        dst: cat.obj(sd.class, sd.k + 1).unwrap(),
        map: m.map.block_diag(&Matrix::identity(f, 1)),
    }
}

impl VecFunctor for DeltaBar {
    fn category(&self) -> &Arc<ElCategory> {
        self.inner.category()
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.kernel(o).dim()
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let a = self.inner.act(&lift(self.category(), m));
        let (s, t) = (self.kernel(m.src), self.kernel(m.dst));
        let cols: Vec<Vec<u8>> = (0..s.dim())
            .map(|i| t.coordinates(&a.apply(s.basis().row(i))).expect("kernels are preserved"))
            .collect();
        Matrix::from_columns(self.category().field(), t.dim(), &cols)
    }
    fn name(&self) -> String {
        format!("Δ̄({})", self.inner.name())
    }
}

pub fn delta_bar(f: &VecFunctorRef) -> Result<VecFunctorRef> {
    Ok(Arc::new(DeltaBar::new(f.clone())?))
}

pub fn delta_bar_power(f: &VecFunctorRef, n: usize) -> Result<VecFunctorRef> {
    let mut g = f.clone();
    for _ in 0..n {
        g = delta_bar(&g)?;
    }
    Ok(g)
}

pub fn vanishes(f: &dyn VecFunctor) -> bool {
    super::is_zero(f)
}

/// Joint kernel of the maps induced by the projections omitting one of the
/// blocks `xs[i]`, inside `F(o ⊕ F_p^{x_1} ⊕ ... ⊕ F_p^{x_n})`. Returns the
/// object carrying the value and the subspace.
pub fn cross_effect(f: &dyn VecFunctor, o: ObjId, xs: &[usize]) -> Result<(ObjId, Subspace)> {
    let cat = f.category();
    let so = cat.object(o);
    let total: usize = xs.iter().sum();
    let big = cat
        .obj(so.class, so.k + total)
        .filter(|&b| cat.in_window(b, f.window()))
        .ok_or_else(|| Error::OutsideWindow(format!("cross effect at object {o} with blocks {xs:?}")))?;
    let field = cat.field();
    let dim = cat.object(big).dim;
    let mut result = Subspace::full(field, f.dim_at(big));
    let mut start = so.dim;
    for &x in xs {
        let keep: Vec<usize> = (0..dim).filter(|&c| c < start || c >= start + x).collect();
        let target = cat.obj(so.class, so.k + total - x).unwrap();
        let q = Morphism {
            src: big,
            dst: target,
            map: Matrix::identity(field, dim).select_rows(&keep),
        };
        result = result.intersect(&f.act(&q).kernel());
        start += x;
    }
    Ok((big, result))
}

/// `cr_n F(o; 1, ..., 1)` with the action of the adjacent transpositions of
/// `S_n` permuting the last `n` coordinates (`P_sigma e_i = e_sigma(i)`),
/// expressed in the coordinates of the subspace basis.
pub fn cross_effect_sigma(f: &dyn VecFunctor, o: ObjId, n: usize) -> Result<(ObjId, Subspace, Vec<Matrix>)> {
    let (big, cr) = cross_effect(f, o, &vec![1; n])?;
    let cat = f.category();
    let field = cat.field();
    let base = cat.object(o).dim;
    let sym = symmetric_group(n);
    let mut gens = Vec::new();
    for &s in sym.group().generators() {
        let map = Matrix::identity(field, base).block_diag(&permutation_matrix(field, sym.perm(s)));
        let a = f.act(&Morphism {
            src: big,
            dst: big,
            map,
        });
        let cols: Vec<Vec<u8>> = (0..cr.dim())
            .map(|i| cr.coordinates(&a.apply(cr.basis().row(i))).expect("cross effect is permutation stable"))
            .collect();
        gens.push(Matrix::from_columns(field, cr.dim(), &cols));
    }
    Ok((big, cr, gens))
}

/// `sum over S of (-1)^|S| F(e_S)` on `F(b)`, where `e_S` kills the
/// coordinates in `S` among the last `j`. Its image is `cr_j` at
/// `(c, k - j; 1, ..., 1)`.
pub fn pi_idempotent(f: &dyn VecFunctor, b: ObjId, j: usize) -> Matrix {
    let cat = f.category();
    let field = cat.field();
    let dim = cat.object(b).dim;
    assert!(cat.object(b).k >= j);
    let d = f.dim_at(b);
    let mut acc = Matrix::zeros(field, d, d);
    for mask in 0u32..(1 << j) {
        let mut e = Matrix::identity(field, dim);
        for i in 0..j {
            if mask >> i & 1 == 1 {
                e.set(dim - j + i, dim - j + i, 0);
            }
        }
        let term = f.act(&Morphism { src: b, dst: b, map: e });
        acc = if mask.count_ones() % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// `degree = Some(n)`: `Δ̄^{n+1} F` vanishes on `window` and `Δ̄^n F` does
/// not. `degree = None`: no vanishing found up to `checked`, either because
/// the window ran out or `d_max` was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub degree: Option<usize>,
    pub window: Window,
    pub checked: usize,
}

impl std::fmt::Display for DegreeCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.degree {
            Some(n) => write!(f, "degree {n} (vanishing verified on total dimension <= {})", self.window.total),
            None => write!(f, "degree > {} (window total {})", self.checked, self.window.total),
        }
    }
}

pub fn polynomial_degree(f: &VecFunctorRef, d_max: usize) -> Result<DegreeCertificate> {
    if vanishes(f.as_ref()) {
        // the zero functor: report degree 0
        return Ok(DegreeCertificate {
            degree: Some(0),
            window: f.window(),
            checked: 0,
        });
    }
    let mut g = f.clone();
    for j in 0..=d_max {
        let next = match delta_bar(&g) {
            Ok(n) => n,
            Err(e) if j == 0 => {
                return Err(Error::OutsideWindow(format!("window too small to certify any degree: {e}")))
            }
            Err(_) => {
                return Ok(DegreeCertificate {
                    degree: None,
                    window: g.window(),
                    checked: j.saturating_sub(1),
                })
            }
        };
        if vanishes(next.as_ref()) {
            return Ok(DegreeCertificate {
                degree: Some(j),
                window: next.window(),
                checked: j,
            });
        }
        g = next;
    }
    Ok(DegreeCertificate {
        degree: None,
        window: g.window(),
        checked: d_max,
    })
}

/// The largest subfunctor `G` of degree at most `n` on the window:
/// `G(b) ⊆ ker Pi_{b, n+1}` wherever `b` has `n + 1` kernel coordinates,
/// closed under preimages. Objects beyond the window impose no condition, so
/// this may be larger than the global `p_n`.
pub fn p_n(f: &VecFunctorRef, n: usize) -> SubFunctor {
    let cat = f.category();
    let field = cat.field();
    let bounds: Vec<Subspace> = (0..cat.objects().len())
        .map(|b| {
            if !cat.in_window(b, f.window()) {
                return Subspace::zero(field, 0);
            }
            if cat.object(b).k > n {
                pi_idempotent(f.as_ref(), b, n + 1).kernel()
            } else {
                Subspace::full(field, f.dim_at(b))
            }
        })
        .collect();
    debug_assert!(window_objects(f.as_ref()).iter().all(|&o| bounds[o].ambient_dim() == f.dim_at(o)));
    SubFunctor::largest_within(f.clone(), bounds)
}
