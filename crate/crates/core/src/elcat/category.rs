use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::skeleton::RectorSkeleton;
use super::{ElMorphism, ElObject};
use crate::config::{pow_count, Budget};
use crate::error::{Error, Result};
use crate::gf::{enumerate_maps, FieldPrime, Matrix, Subspace};
use crate::sfunctor::{boxplus, is_connected, tilde, SElement, SetFunctorRef};

pub type ObjId = usize;

/// A skeletal object `(rep_c ⊞ eps_k)` of dimension `dim(c) + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SkelObject {
    pub id: ObjId,
    pub class: usize,
    pub k: usize,
    pub dim: usize,
    pub element: SElement,
}

/// A morphism between skeletal objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: ObjId,
    pub dst: ObjId,
    pub map: Matrix,
}

/// The objects of total dimension at most `total` whose regular part has
/// dimension at most `class_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub total: usize,
    pub class_dim: usize,
}

impl Window {
    pub fn new(total: usize, class_dim: usize) -> Self {
        Window { total, class_dim }
    }

    /// One dimension fewer, as consumed by one application of `Δ̄`.
    pub fn shrink(self, by: usize) -> Option<Window> {
        let total = self.total.checked_sub(by)?;
        Some(Window {
            total,
            class_dim: self.class_dim.min(total),
        })
    }

    pub fn meet(self, other: Window) -> Window {
        Window {
            total: self.total.min(other.total),
            class_dim: self.class_dim.min(other.class_dim),
        }
    }
}

/// Block decomposition `[[f, 0], [g, h]]` of a skeletal morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub f: Matrix,
    pub g: Matrix,
    pub h: Matrix,
}

/// Output of [`ElCategory::decompose`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `(W/ker psi, psi~)` realized on the pivot complement.
    pub regular: ElObject,
    pub kernel: Subspace,
    /// `theta: (W/ker psi ⊕ ker psi, psi~ ⊞ eps) -> (W, psi)`.
    pub iso: ElMorphism,
    pub class: usize,
    pub object: ObjId,
    /// Isomorphism from the input object to its skeletal object.
    pub to_skeleton: Matrix,
    pub from_skeleton: Matrix,
}

/// Skeleton of the category of elements of a connected set functor.
pub struct ElCategory {
    functor: SetFunctorRef,
    skeleton: RectorSkeleton,
    objects: Vec<SkelObject>,
    lookup: HashMap<(usize, usize), ObjId>,
    budget: Budget,
    generators: Mutex<HashMap<Window, Arc<Vec<Morphism>>>>,
}

impl std::fmt::Debug for ElCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ElCategory")
            .field("functor", &self.functor.name())
            .field("classes", &self.skeleton.len())
            .field("objects", &self.objects.len())
            .finish()
    }
}

impl ElCategory {
    pub fn new(functor: SetFunctorRef, budget: Budget) -> Result<Arc<Self>> {
        if !is_connected(functor.as_ref()) {
            return Err(Error::NotConnected(functor.size(0) as usize));
        }
        let skeleton = RectorSkeleton::build(functor.as_ref(), &budget)?;
        let cap = functor.cap();
        let mut keyed = Vec::new();
        for (c, class) in skeleton.classes().iter().enumerate() {
            for k in 0..=cap - class.dim {
                keyed.push((class.dim + k, c, k));
            }
        }
        keyed.sort();
        let mut objects = Vec::with_capacity(keyed.len());
        let mut lookup = HashMap::new();
        for (id, &(dim, c, k)) in keyed.iter().enumerate() {
            let element = boxplus(functor.as_ref(), skeleton.class(c).element, k)?;
            objects.push(SkelObject {
                id,
                class: c,
                k,
                dim,
                element,
            });
            lookup.insert((c, k), id);
        }
        Ok(Arc::new(ElCategory {
            functor,
            skeleton,
            objects,
            lookup,
            budget,
            generators: Mutex::new(HashMap::new()),
        }))
    }

    pub fn functor(&self) -> &SetFunctorRef {
        &self.functor
    }
    pub fn skeleton(&self) -> &RectorSkeleton {
        &self.skeleton
    }
    pub fn field(&self) -> FieldPrime {
        self.functor.field()
    }
    pub fn cap(&self) -> usize {
        self.functor.cap()
    }
    pub fn budget(&self) -> &Budget {
        &self.budget
    }
    pub fn full_window(&self) -> Window {
        Window::new(self.cap(), self.skeleton.d_reg().min(self.cap()))
    }
    pub fn objects(&self) -> &[SkelObject] {
        &self.objects
    }
    pub fn object(&self, id: ObjId) -> &SkelObject {
        &self.objects[id]
    }
    pub fn obj(&self, class: usize, k: usize) -> Option<ObjId> {
        self.lookup.get(&(class, k)).copied()
    }
    pub fn class_dim(&self, id: ObjId) -> usize {
        self.skeleton.class(self.objects[id].class).dim
    }

    pub fn in_window(&self, id: ObjId, w: Window) -> bool {
        let o = &self.objects[id];
        o.dim <= w.total && self.class_dim(id) <= w.class_dim
    }

    pub fn window_objects(&self, w: Window) -> Vec<ObjId> {
        (0..self.objects.len()).filter(|&i| self.in_window(i, w)).collect()
    }

    pub fn is_morphism(&self, src: ElObject, dst: ElObject, map: &Matrix) -> bool {
        map.rows() == dst.dim
            && map.cols() == src.dim
            && self.functor.pull(map, dst.elt.index) == src.elt.index
    }

    pub fn is_skeletal_morphism(&self, m: &Morphism) -> bool {
        let (a, b) = (&self.objects[m.src], &self.objects[m.dst]);
        self.is_morphism(ElObject::new(a.element), ElObject::new(b.element), &m.map)
    }

    /// Identity of a skeletal object.
    pub fn identity(&self, id: ObjId) -> Morphism {
        Morphism {
            src: id,
            dst: id,
            map: Matrix::identity(self.field(), self.objects[id].dim),
        }
    }

    /// `(c, k + 1) -> (c, k)`, the projection `[I | 0]`.
    pub fn drop_last(&self, id: ObjId) -> Option<Morphism> {
        let o = self.objects[id];
        let target = self.obj(o.class, o.k.checked_sub(1)?)?;
        let mut m = Matrix::zeros(self.field(), o.dim - 1, o.dim);
        m.paste(0, 0, &Matrix::identity(self.field(), o.dim - 1));
        Some(Morphism {
            src: id,
            dst: target,
            map: m,
        })
    }

    /// `(c, k) -> (c, k + 1)`, the inclusion `[I; 0]`.
    pub fn add(&self, id: ObjId) -> Option<Morphism> {
        let o = self.objects[id];
        let target = self.obj(o.class, o.k + 1)?;
        let mut m = Matrix::zeros(self.field(), o.dim + 1, o.dim);
        m.paste(0, 0, &Matrix::identity(self.field(), o.dim));
        Some(Morphism {
            src: id,
            dst: target,
            map: m,
        })
    }

    pub fn compose(&self, second: &Morphism, first: &Morphism) -> Morphism {
        assert_eq!(first.dst, second.src);
        Morphism {
            src: first.src,
            dst: second.dst,
            map: second.map.mul(&first.map),
        }
    }

    pub fn assemble(&self, f: &Matrix, g: &Matrix, h: &Matrix) -> Matrix {
        let (r2, r) = (f.rows(), f.cols());
        let (k2, k) = (h.rows(), h.cols());
        let mut m = Matrix::zeros(self.field(), r2 + k2, r + k);
        m.paste(0, 0, f);
        m.paste(r2, 0, g);
        m.paste(r2, r, h);
        m
    }

    pub fn blocks(&self, m: &Morphism) -> Blocks {
        let r = self.class_dim(m.src);
        let r2 = self.class_dim(m.dst);
        let (n, n2) = (self.objects[m.src].dim, self.objects[m.dst].dim);
        Blocks {
            f: m.map.submatrix(0..r2, 0..r),
            g: m.map.submatrix(r2..n2, 0..r),
            h: m.map.submatrix(r2..n2, r..n),
        }
    }

    /// Number of morphisms `a -> b` predicted by the block form.
    pub fn hom_count(&self, a: ObjId, b: ObjId) -> u128 {
        let (oa, ob) = (&self.objects[a], &self.objects[b]);
        let hr = self.skeleton.hom_r(oa.class, ob.class).len() as u128;
        hr.saturating_mul(pow_count(self.field().order(), ob.k * oa.dim))
    }

    /// All morphisms `a -> b`, assembled from the block form: `f` runs over
    /// `hom_R`, and `g`, `h` over all maps.
    pub fn skeleton_homs(&self, a: ObjId, b: ObjId) -> Result<Vec<Matrix>> {
        let (oa, ob) = (self.objects[a], self.objects[b]);
        self.budget.check_maps(self.hom_count(a, b))?;
        let f = self.field();
        let (r, r2) = (self.class_dim(a), self.class_dim(b));
        let mut out = Vec::new();
        for fm in self.skeleton.hom_r(oa.class, ob.class) {
            for lower in enumerate_maps(f, oa.dim, ob.k, &self.budget)? {
                let mut m = Matrix::zeros(f, ob.dim, oa.dim);
                m.paste(0, 0, fm);
                m.paste(r2, 0, &lower);
                debug_assert_eq!(m.submatrix(r2..ob.dim, 0..r).rows(), ob.k);
                out.push(m);
            }
        }
        Ok(out)
    }

    /// Brute-force hom-set between arbitrary objects, in index order.
    pub fn hom_set(&self, a: ElObject, b: ElObject) -> Result<Vec<ElMorphism>> {
        let maps: Vec<Matrix> = enumerate_maps(self.field(), a.dim, b.dim, &self.budget)?.collect();
        Ok(maps
            .into_par_iter()
            .filter(|m| self.functor.pull(m, b.elt.index) == a.elt.index)
            .map(|map| ElMorphism { src: a, dst: b, map })
            .collect())
    }

    /// Checks that the brute-force hom-set equals the block-form set.
    pub fn verify_block_form(&self, a: ObjId, b: ObjId) -> Result<bool> {
        let ea = ElObject::new(self.objects[a].element);
        let eb = ElObject::new(self.objects[b].element);
        let brute: BTreeSet<Matrix> = self.hom_set(ea, eb)?.into_iter().map(|m| m.map).collect();
        let blocks: Vec<Matrix> = self.skeleton_homs(a, b)?;
        let n = blocks.len();
        let blocks: BTreeSet<Matrix> = blocks.into_iter().collect();
        Ok(n == blocks.len() && brute == blocks && brute.len() as u128 == self.hom_count(a, b))
    }

    /// Splits an object into its regular part and kernel and routes it to a
    /// skeletal object.
    pub fn decompose(&self, o: ElObject) -> Result<Decomposition> {
        let s = self.functor.as_ref();
        let f = self.field();
        let t = tilde(s, o.elt)?;
        let ker = t.kernel.clone();
        let (r, k) = (t.element.dim, ker.dim());
        let theta = t.section.hstack(&ker.inclusion());
        let assembled = ElObject::new(boxplus(s, t.element, k)?);
        let theta_inv = theta
            .inverse()
            .ok_or_else(|| Error::InvalidFunctor("section and kernel do not span".into()))?;
        if !self.is_morphism(assembled, o, &theta) || !self.is_morphism(o, assembled, &theta_inv) {
            return Err(Error::WeakNoetherianViolated(format!(
                "{} is not isomorphic to its assembled decomposition",
                o.elt
            )));
        }
        let (class, w) = self
            .skeleton
            .class_of(t.element)
            .ok_or_else(|| Error::InvalidFunctor(format!("{} has no class", t.element)))?;
        let object = self
            .obj(class, k)
            .ok_or_else(|| Error::OutsideWindow(format!("{} beyond the cap", o.elt)))?;
        let lift = w.block_diag(&Matrix::identity(f, k));
        let to_skeleton = lift.mul(&theta_inv);
        let from_skeleton = to_skeleton.inverse().expect("composite of isomorphisms");
        debug_assert!(self.is_morphism(o, ElObject::new(self.objects[object].element), &to_skeleton));
        debug_assert_eq!(r + k, o.dim);
        Ok(Decomposition {
            regular: ElObject::new(t.element),
            kernel: ker,
            iso: ElMorphism {
                src: assembled,
                dst: o,
                map: theta,
            },
            class,
            object,
            to_skeleton,
            from_skeleton,
        })
    }

    /// Transports a morphism between arbitrary objects to the skeleton.
    pub fn route(&self, m: &ElMorphism) -> Result<Morphism> {
        let a = self.decompose(m.src)?;
        let b = self.decompose(m.dst)?;
        Ok(Morphism {
            src: a.object,
            dst: b.object,
            map: b.to_skeleton.mul(&m.map).mul(&a.from_skeleton),
        })
    }

    /// Generators of the window's full subcategory: every morphism between
    /// window objects is a composite of these.
    pub fn generators(&self, w: Window) -> Arc<Vec<Morphism>> {
        if let Some(g) = self.generators.lock().unwrap().get(&w) {
            return g.clone();
        }
        let gens = Arc::new(self.build_generators(w));
        self.generators.lock().unwrap().insert(w, gens.clone());
        gens
    }

    fn build_generators(&self, w: Window) -> Vec<Morphism> {
        let f = self.field();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut push = |m: Morphism, out: &mut Vec<Morphism>| {
            if !(m.src == m.dst && m.map.is_identity()) && seen.insert(m.clone()) {
                out.push(m);
            }
        };
        for id in self.window_objects(w) {
            let o = self.objects[id];
            let r = self.class_dim(id);
            if let Some(m) = self.drop_last(id) {
                push(m, &mut out);
            }
            if let Some(m) = self.add(id).filter(|m| self.in_window(m.dst, w)) {
                push(m, &mut out);
            }
            let class = self.skeleton.class(o.class);
            for &g in class.group.generators() {
                push(
                    Morphism {
                        src: id,
                        dst: id,
                        map: class.aut[g].block_diag(&Matrix::identity(f, o.k)),
                    },
                    &mut out,
                );
            }
            for i in 0..o.k {
                for j in 0..o.k {
                    if i != j {
                        let mut m = Matrix::identity(f, o.dim);
                        m.set(r + i, r + j, 1);
                        push(Morphism { src: id, dst: id, map: m }, &mut out);
                    }
                }
                for j in 0..r {
                    let mut m = Matrix::identity(f, o.dim);
                    m.set(r + i, j, 1);
                    push(Morphism { src: id, dst: id, map: m }, &mut out);
                }
            }
            if f.p() > 2 && o.k > 0 {
                let mut m = Matrix::identity(f, o.dim);
                m.set(r, r, f.primitive_root());
                push(Morphism { src: id, dst: id, map: m }, &mut out);
            }
            for c2 in 0..self.skeleton.len() {
                if c2 == o.class {
                    continue;
                }
                let Some(dst) = self.obj(c2, o.k).filter(|&d| self.in_window(d, w)) else {
                    continue;
                };
                for fm in self.skeleton.hom_r(o.class, c2) {
                    push(
                        Morphism {
                            src: id,
                            dst,
                            map: fm.block_diag(&Matrix::identity(f, o.k)),
                        },
                        &mut out,
                    );
                }
            }
        }
        out
    }

    /// All morphisms inside the window reachable from identities by
    /// generators. Used to cross-check [`Self::generators`].
    pub fn generated_closure(&self, w: Window) -> HashMap<(ObjId, ObjId), BTreeSet<Matrix>> {
        let gens = self.generators(w);
        let mut by_src: HashMap<ObjId, Vec<&Morphism>> = HashMap::new();
        for g in gens.iter() {
            by_src.entry(g.src).or_default().push(g);
        }
        let mut out: HashMap<(ObjId, ObjId), BTreeSet<Matrix>> = HashMap::new();
        let mut queue = VecDeque::new();
        for id in self.window_objects(w) {
            let m = self.identity(id);
            out.entry((id, id)).or_default().insert(m.map.clone());
            queue.push_back(m);
        }
        while let Some(m) = queue.pop_front() {
            for g in by_src.get(&m.dst).into_iter().flatten() {
                let c = self.compose(g, &m);
                if out.entry((c.src, c.dst)).or_default().insert(c.map.clone()) {
                    queue.push_back(c);
                }
            }
        }
        out
    }
}
