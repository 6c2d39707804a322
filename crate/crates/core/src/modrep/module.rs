use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::Serialize;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::gf::{char_poly, FieldPrime, Matrix, Poly, Subspace};

/// A left `F_p[G]`-module given by one matrix per generator of `G`.
#[derive(Clone, Debug)]
pub struct GroupModule {
    group: Arc<FiniteGroup>,
    field: FieldPrime,
    dim: usize,
    gens: Vec<Matrix>,
    elements: OnceLock<Vec<Matrix>>,
}

impl PartialEq for GroupModule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.field == other.field && self.dim == other.dim && self.gens == other.gens
    }
}
impl Eq for GroupModule {}

/// Serializable form: the group description plus generator matrices.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleFile {
    pub p: u8,
    pub group: String,
    pub group_order: usize,
    pub group_generators: Vec<usize>,
    pub dim: usize,
    pub generators: Vec<Matrix>,
}

impl GroupModule {
    /// Checks `rho(x g) = rho(x) rho(g)` for every element `x` and generator
    /// `g`, which makes the generator assignment a homomorphism.
    pub fn new(group: Arc<FiniteGroup>, field: FieldPrime, dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(group, field, dim, gens)?;
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, field: FieldPrime, dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::InvalidModule(format!(
                "{} generator matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim || g.field() != field) {
            return Err(Error::InvalidModule(format!("generator matrices must be {dim}x{dim}")));
        }
        Ok(GroupModule {
            group,
            field,
            dim,
            gens,
            elements: OnceLock::new(),
        })
    }

    fn check_relations(&self) -> Result<()> {
        let els = self.try_elements()?;
        let g = &self.group;
        for x in 0..g.order() {
            for (gi, &s) in g.generators().iter().enumerate() {
                if els[g.mul(x, s)] != els[x].mul(&self.gens[gi]) {
                    return Err(Error::InvalidModule(format!(
                        "relation fails at element {x}, generator {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn try_elements(&self) -> Result<&Vec<Matrix>> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let g = &self.group;
        let tree = g.spanning_tree();
        let mut els: Vec<Option<Matrix>> = vec![None; g.order()];
        els[g.identity()] = Some(Matrix::identity(self.field, self.dim));
        // BFS order guarantees parents are filled first
        let mut order: Vec<usize> = (0..g.order()).collect();
        let depth = |mut x: usize| {
            let mut d = 0;
            while let Some((y, _)) = tree[x] {
                x = y;
                d += 1;
            }
            d
        };
        order.sort_by_key(|&x| depth(x));
        for x in order {
            if let Some((y, gi)) = tree[x] {
                let m = els[y].as_ref().expect("parent first").mul(&self.gens[gi]);
                els[x] = Some(m);
            }
        }
        let els: Vec<Matrix> = els.into_iter().map(|m| m.expect("generators generate")).collect();
        Ok(self.elements.get_or_init(|| els))
    }

    pub fn trivial(group: Arc<FiniteGroup>, field: FieldPrime) -> Self {
        let gens = vec![Matrix::identity(field, 1); group.generators().len()];
        GroupModule::new_unchecked(group, field, 1, gens).unwrap()
    }

    pub fn zero(group: Arc<FiniteGroup>, field: FieldPrime) -> Self {
        let gens = vec![Matrix::zeros(field, 0, 0); group.generators().len()];
        GroupModule::new_unchecked(group, field, 0, gens).unwrap()
    }

    /// `rho(g) e_h = e_{gh}`.
    pub fn regular(group: Arc<FiniteGroup>, field: FieldPrime) -> Self {
        let n = group.order();
        let gens = group
            .generators()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(field, n, n);
                for h in 0..n {
                    m.set(group.mul(s, h), h, 1);
                }
                m
            })
            .collect();
        GroupModule::new_unchecked(group, field, n, gens).unwrap()
    }

    /// The module whose element matrices are given for every group element.
    pub fn from_elements(group: Arc<FiniteGroup>, field: FieldPrime, dim: usize, els: Vec<Matrix>) -> Result<Self> {
        if els.len() != group.order() {
            return Err(Error::InvalidModule("one matrix per group element required".into()));
        }
        let gens = group.generators().iter().map(|&s| els[s].clone()).collect();
        let m = GroupModule::new(group, field, dim, gens)?;
        if m.elements() != &els {
            return Err(Error::InvalidModule("element matrices are not a representation".into()));
        }
        Ok(m)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn field(&self) -> FieldPrime {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }
    pub fn elements(&self) -> &Vec<Matrix> {
        self.try_elements().expect("validated module")
    }
    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.elements()[g]
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        self.gens.iter().all(|g| u.contains_subspace(&u.image_under(g)))
    }

    /// The action restricted to a stable subspace, in the coordinates of its
    /// canonical basis.
    pub fn submodule(&self, u: &Subspace) -> Result<GroupModule> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Option<Vec<Vec<u8>>> = (0..u.dim())
                    .map(|i| u.coordinates(&g.apply(u.basis().row(i))))
                    .collect();
                cols.map(|c| Matrix::from_columns(self.field, u.dim(), &c))
                    .ok_or_else(|| Error::InvalidModule("subspace is not stable".into()))
            })
            .collect::<Result<_>>()?;
        GroupModule::new_unchecked(self.group.clone(), self.field, u.dim(), gens)
    }

    /// The action on `M / U` in the coordinates of the pivot complement.
    pub fn quotient(&self, u: &Subspace) -> Result<GroupModule> {
        if !self.is_submodule(u) {
            return Err(Error::InvalidModule("subspace is not stable".into()));
        }
        let q = u.quotient_map();
        let s = u.section();
        let gens = self.gens.iter().map(|g| q.mul(g).mul(&s)).collect();
        GroupModule::new_unchecked(self.group.clone(), self.field, u.codim(), gens)
    }

    /// `rho*(g) = rho(g^-1)^T`.
    pub fn dual(&self) -> GroupModule {
        let gens = self
            .group
            .generators()
            .iter()
            .map(|&s| self.matrix(self.group.inv(s)).transpose())
            .collect();
        GroupModule::new_unchecked(self.group.clone(), self.field, self.dim, gens).unwrap()
    }

    pub fn direct_sum(&self, other: &GroupModule) -> GroupModule {
        assert_eq!(self.group, other.group);
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.block_diag(b)).collect();
        GroupModule::new_unchecked(self.group.clone(), self.field, self.dim + other.dim, gens).unwrap()
    }

    /// Restriction along `embedding`, which sends each element of `sub` to an
    /// element of this module's group.
    pub fn restrict(&self, sub: Arc<FiniteGroup>, embedding: &[usize]) -> Result<GroupModule> {
        let gens = sub.generators().iter().map(|&s| self.matrix(embedding[s]).clone()).collect();
        GroupModule::new(sub, self.field, self.dim, gens)
    }

    /// A seeded random element of the image of `F_p[G]`: a combination of a
    /// few random generator words.
    pub fn random_algebra_element<R: Rng>(&self, rng: &mut R) -> Matrix {
        let f = self.field;
        let mut theta = Matrix::zeros(f, self.dim, self.dim);
        if self.gens.is_empty() {
            return Matrix::identity(f, self.dim).scale(rng.gen_range(0..f.p()));
        }
        for _ in 0..3 {
            let len = rng.gen_range(1..=6);
            let mut w = Matrix::identity(f, self.dim);
            for _ in 0..len {
                w = w.mul(&self.gens[rng.gen_range(0..self.gens.len())]);
            }
            let c = rng.gen_range(1..f.p());
            theta = theta.add(&w.scale(c));
        }
        theta
    }

    /// Basis of `Hom_G(self, other)` as matrices `X` with
    /// `X rho_1(g) = rho_2(g) X`.
    pub fn hom_space(&self, other: &GroupModule) -> Vec<Matrix> {
        let f = self.field;
        let (d1, d2) = (self.dim, other.dim);
        let unknowns = d1 * d2;
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (a, b) in self.gens.iter().zip(&other.gens) {
            for i in 0..d2 {
                for j in 0..d1 {
                    // (X a)_{ij} - (b X)_{ij}
                    let mut row = vec![0u8; unknowns];
                    for t in 0..d1 {
                        let v = a.get(t, j);
                        if v != 0 {
                            row[i * d1 + t] = f.add(row[i * d1 + t], v);
                        }
                    }
                    for t in 0..d2 {
                        let v = b.get(i, t);
                        if v != 0 {
                            row[t * d1 + j] = f.sub(row[t * d1 + j], v);
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = Matrix::from_row_vectors(f, unknowns, &rows);
        let ker = system.kernel();
        (0..ker.dim())
            .map(|r| {
                let v = ker.basis().row(r);
                let mut x = Matrix::zeros(f, d2, d1);
                for i in 0..d2 {
                    for j in 0..d1 {
                        x.set(i, j, v[i * d1 + j]);
                    }
                }
                x
            })
            .collect()
    }

    /// Char polys of every element's matrix: an isomorphism invariant that
    /// separates non-isomorphic simple modules.
    pub fn invariant(&self) -> (usize, Vec<Vec<u8>>) {
        let polys = self.elements().iter().map(|m| char_poly(m).coeffs().to_vec()).collect();
        (self.dim, polys)
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile {
            p: self.field.p(),
            group: self.group.name().to_string(),
            group_order: self.group.order(),
            group_generators: self.group.generators().to_vec(),
            dim: self.dim,
            generators: self.gens.clone(),
        }
    }

    pub fn char_polys(&self) -> Vec<Poly> {
        self.gens.iter().map(char_poly).collect()
    }
}

/// An isomorphism `self -> other` when one exists among the basis of the
/// intertwiner space and seeded random combinations of it.
pub fn find_isomorphism(a: &GroupModule, b: &GroupModule, seed: u64) -> Option<Matrix> {
    use rand::SeedableRng;
    if a.dim != b.dim || a.group != b.group {
        return None;
    }
    if a.dim == 0 {
        return Some(Matrix::zeros(a.field, 0, 0));
    }
    let basis = a.hom_space(b);
    if basis.is_empty() {
        return None;
    }
    if let Some(x) = basis.iter().find(|x| x.inverse().is_some()) {
        return Some(x.clone());
    }
    let f = a.field;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut x = Matrix::zeros(f, b.dim, a.dim);
        for m in &basis {
            x = x.add(&m.scale(rng.gen_range(0..f.p())));
        }
        if x.inverse().is_some() {
            return Some(x);
        }
    }
    None
}

pub fn iso_modules(a: &GroupModule, b: &GroupModule) -> bool {
    find_isomorphism(a, b, 0).is_some()
}
