use std::collections::VecDeque;
use std::sync::Arc;

use super::{window_objects, VecFunctor, VecFunctorRef};
use crate::elcat::{ElCategory, Morphism, ObjId, Window};
use crate::error::{Error, Result};
use crate::gf::{preimage, Echelon, Matrix, Subspace};

/// A morphism-stable choice of subspace at every window object.
#[derive(Clone)]
pub struct SubFunctor {
    parent: VecFunctorRef,
    subspaces: Vec<Subspace>,
}

impl std::fmt::Debug for SubFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dims: Vec<usize> = self.subspaces.iter().map(Subspace::dim).collect();
        write!(f, "SubFunctor({}, dims {dims:?})", self.parent.name())
    }
}

fn full_list(parent: &dyn VecFunctor, make: impl Fn(usize) -> Subspace) -> Vec<Subspace> {
    let cat = parent.category();
    (0..cat.objects().len())
        .map(|o| if cat.in_window(o, parent.window()) { make(parent.dim_at(o)) } else { make(0) })
        .collect()
}

impl SubFunctor {
    /// `subspaces[o]` for every object id of the category; entries outside
    /// the window are ignored. Stability is checked on generators.
    pub fn new(parent: VecFunctorRef, subspaces: Vec<Subspace>) -> Result<Self> {
        let s = SubFunctor::new_unchecked(parent, subspaces);
        if let Some(g) = s.unstable_generator() {
            return Err(Error::InvalidFunctor(format!(
                "subspaces not stable under {} : {} -> {}",
                g.map.key(),
                g.src,
                g.dst
            )));
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(parent: VecFunctorRef, subspaces: Vec<Subspace>) -> Self {
        SubFunctor { parent, subspaces }
    }

    pub fn whole(parent: VecFunctorRef) -> Self {
        let f = parent.category().field();
        let subs = full_list(parent.as_ref(), |d| Subspace::full(f, d));
        SubFunctor::new_unchecked(parent, subs)
    }

    pub fn zero(parent: VecFunctorRef) -> Self {
        let f = parent.category().field();
        let subs = full_list(parent.as_ref(), |d| Subspace::zero(f, d));
        SubFunctor::new_unchecked(parent, subs)
    }

    fn unstable_generator(&self) -> Option<Morphism> {
        let cat = self.parent.category();
        cat.generators(self.parent.window())
            .iter()
            .find(|g| {
                let img = self.subspaces[g.src].image_under(&self.parent.act(g));
                !self.subspaces[g.dst].contains_subspace(&img)
            })
            .cloned()
    }

    pub fn parent(&self) -> &VecFunctorRef {
        &self.parent
    }
    pub fn subspace(&self, o: ObjId) -> &Subspace {
        &self.subspaces[o]
    }
    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    fn objs(&self) -> Vec<ObjId> {
        window_objects(self.parent.as_ref())
    }

    pub fn is_zero_sub(&self) -> bool {
        self.objs().iter().all(|&o| self.subspaces[o].is_zero())
    }
    pub fn is_whole(&self) -> bool {
        self.objs().iter().all(|&o| self.subspaces[o].is_full())
    }
    pub fn contains(&self, other: &SubFunctor) -> bool {
        self.objs().iter().all(|&o| self.subspaces[o].contains_subspace(&other.subspaces[o]))
    }
    pub fn same_as(&self, other: &SubFunctor) -> bool {
        self.objs().iter().all(|&o| self.subspaces[o] == other.subspaces[o])
    }
    pub fn sum(&self, other: &SubFunctor) -> SubFunctor {
        let subs = self.subspaces.iter().zip(&other.subspaces).map(|(a, b)| a.sum(b)).collect();
        SubFunctor::new_unchecked(self.parent.clone(), subs)
    }
    pub fn intersect(&self, other: &SubFunctor) -> SubFunctor {
        let subs = self.subspaces.iter().zip(&other.subspaces).map(|(a, b)| a.intersect(b)).collect();
        SubFunctor::new_unchecked(self.parent.clone(), subs)
    }

    pub fn as_functor(&self) -> VecFunctorRef {
        Arc::new(self.clone())
    }

    pub fn quotient(&self) -> QuotientFunctor {
        QuotientFunctor { sub: self.clone() }
    }

    /// The largest subfunctor contained in `bounds` (one subspace per object),
    /// found by shrinking along preimages of generators until stable.
    pub fn largest_within(parent: VecFunctorRef, mut bounds: Vec<Subspace>) -> SubFunctor {
        let cat = parent.category().clone();
        let gens = cat.generators(parent.window());
        let acts: Vec<Matrix> = gens.iter().map(|g| parent.act(g)).collect();
        loop {
            let mut changed = false;
            for (g, a) in gens.iter().zip(&acts) {
                let pre = preimage(a, &bounds[g.dst]).expect("dimensions agree");
                let next = bounds[g.src].intersect(&pre);
                if next != bounds[g.src] {
                    bounds[g.src] = next;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        SubFunctor::new_unchecked(parent, bounds)
    }
}

impl VecFunctor for SubFunctor {
    fn category(&self) -> &Arc<ElCategory> {
        self.parent.category()
    }
    fn window(&self) -> Window {
        self.parent.window()
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.subspaces[o].dim()
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let a = self.parent.act(m);
        let (s, t) = (&self.subspaces[m.src], &self.subspaces[m.dst]);
        let cols: Vec<Vec<u8>> = (0..s.dim())
            .map(|i| t.coordinates(&a.apply(s.basis().row(i))).expect("stable subspace"))
            .collect();
        Matrix::from_columns(self.category().field(), t.dim(), &cols)
    }
    fn name(&self) -> String {
        format!("sub({})", self.parent.name())
    }
}

/// `F / G` on the pivot complements of `G`.
#[derive(Clone, Debug)]
pub struct QuotientFunctor {
    sub: SubFunctor,
}

impl QuotientFunctor {
    pub fn sub(&self) -> &SubFunctor {
        &self.sub
    }
    /// `F(o) -> (F/G)(o)`.
    pub fn projection(&self, o: ObjId) -> Matrix {
        self.sub.subspaces[o].quotient_map()
    }
}

impl VecFunctor for QuotientFunctor {
    fn category(&self) -> &Arc<ElCategory> {
        self.sub.category()
    }
    fn window(&self) -> Window {
        self.sub.window()
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.sub.subspaces[o].codim()
    }
    fn act(&self, m: &Morphism) -> Matrix {
        let q = self.sub.subspaces[m.dst].quotient_map();
        let s = self.sub.subspaces[m.src].section();
        q.mul(&self.sub.parent.act(m)).mul(&s)
    }
    fn name(&self) -> String {
        format!("{}/sub", self.sub.parent.name())
    }
}

/// The smallest subfunctor containing the given vectors.
pub fn generated_by(f: &VecFunctorRef, seeds: &[(ObjId, Vec<u8>)]) -> Result<SubFunctor> {
    let cat = f.category().clone();
    let w = f.window();
    let field = cat.field();
    let gens = cat.generators(w);
    let mut by_src: Vec<Vec<(ObjId, Matrix)>> = vec![Vec::new(); cat.objects().len()];
    for g in gens.iter() {
        by_src[g.src].push((g.dst, f.act(g)));
    }
    let mut ech: Vec<Echelon> = (0..cat.objects().len())
        .map(|o| Echelon::new(field, if cat.in_window(o, w) { f.dim_at(o) } else { 0 }))
        .collect();
    let mut queue = VecDeque::new();
    for (o, v) in seeds {
        super::checked_dim(f.as_ref(), *o)?;
        if v.len() != f.dim_at(*o) {
            return Err(Error::DimensionMismatch(format!("vector of length {} at object {o}", v.len())));
        }
        if ech[*o].insert(v) {
            queue.push_back((*o, v.clone()));
        }
    }
    while let Some((o, v)) = queue.pop_front() {
        for (dst, a) in &by_src[o] {
            let img = a.apply(&v);
            if ech[*dst].insert(&img) {
                queue.push_back((*dst, img));
            }
        }
    }
    let subs = ech.into_iter().map(Echelon::into_subspace).collect();
    Ok(SubFunctor::new_unchecked(f.clone(), subs))
}

/// `<x>`: the image of `F_p[Hom(o, -)]` under `beta -> F(beta) x`.
pub fn generated_subfunctor(f: &VecFunctorRef, o: ObjId, x: &[u8]) -> Result<SubFunctor> {
    generated_by(f, &[(o, x.to_vec())])
}
