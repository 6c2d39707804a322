use std::collections::HashMap;
use super::{SetFunctor, SetFunctorRef};
use crate::config::pow_count;
use crate::error::{Error, Result};
use crate::gf::{enumerate_subspaces, preimage, FieldPrime, Matrix, Subspace};

/// `S_U(W) = Hom(W, U)` with `U = F_p^u`; an element is the index of a
/// `u x d` matrix.
#[derive(Clone, Debug)]
pub struct Representable {
    field: FieldPrime,
    u: usize,
    cap: usize,
}

impl Representable {
    pub fn new(field: FieldPrime, u: usize, cap: usize) -> Result<Self> {
        if pow_count(field.order(), u * cap) > u32::MAX as u128 {
            return Err(Error::InvalidFunctor(format!(
                "Hom(-, F_{}^{u}) up to dimension {cap} does not fit 32-bit indices",
                field.p()
            )));
        }
        Ok(Representable { field, u, cap })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn element(&self, m: &Matrix) -> u32 {
        assert_eq!(m.rows(), self.u);
        m.index() as u32
    }

    pub fn matrix(&self, d: usize, s: u32) -> Matrix {
        Matrix::from_index(self.field, self.u, d, s as u64)
    }
}

impl SetFunctor for Representable {
    fn field(&self) -> FieldPrime {
        self.field
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn size(&self, d: usize) -> u32 {
        pow_count(self.field.order(), self.u * d) as u32
    }
    fn pull(&self, alpha: &Matrix, s: u32) -> u32 {
        self.matrix(alpha.rows(), s).mul(alpha).index() as u32
    }
    fn name(&self) -> String {
        format!("Hom(-, F_{}^{})", self.field.p(), self.u)
    }
}

/// `S_U / Gamma`: orbits of a subgroup `Gamma` of `GL(U)` acting on
/// `Hom(W, U)` by post-composition. Orbits are indexed in order of their
/// minimal member.
#[derive(Clone, Debug)]
pub struct OrbitFunctor {
    base: Representable,
    gamma: Vec<Matrix>,
    orbit_of: Vec<Vec<u32>>,
    reps: Vec<Vec<u32>>,
}

impl OrbitFunctor {
    pub fn new(field: FieldPrime, u: usize, cap: usize, gamma: Vec<Matrix>) -> Result<Self> {
        for g in &gamma {
            if g.rows() != u || g.cols() != u || g.field() != field || g.inverse().is_none() {
                return Err(Error::InvalidFunctor(format!(
                    "orbit generator {g:?} is not in GL_{u}(F_{})",
                    field.p()
                )));
            }
        }
        let base = Representable::new(field, u, cap)?;
        let mut orbit_of = Vec::new();
        let mut reps = Vec::new();
        for d in 0..=cap {
            let n = base.size(d) as usize;
            let mut of = vec![u32::MAX; n];
            let mut rs = Vec::new();
            for s in 0..n {
                if of[s] != u32::MAX {
                    continue;
                }
                let id = rs.len() as u32;
                rs.push(s as u32);
                of[s] = id;
                let mut stack = vec![s as u32];
                while let Some(t) = stack.pop() {
                    let m = base.matrix(d, t);
                    for g in &gamma {
                        let x = base.element(&g.mul(&m)) as usize;
                        if of[x] == u32::MAX {
                            of[x] = id;
                            stack.push(x as u32);
                        }
                    }
                }
            }
            orbit_of.push(of);
            reps.push(rs);
        }
        Ok(OrbitFunctor {
            base,
            gamma,
            orbit_of,
            reps,
        })
    }

    pub fn gamma(&self) -> &[Matrix] {
        &self.gamma
    }

    pub fn u(&self) -> usize {
        self.base.u
    }

    /// Minimal representative of orbit `s` in `Hom(F_p^d, U)`.
    pub fn representative(&self, d: usize, s: u32) -> Matrix {
        self.base.matrix(d, self.reps[d][s as usize])
    }

    pub fn orbit_of_matrix(&self, m: &Matrix) -> u32 {
        self.orbit_of[m.cols()][self.base.element(m) as usize]
    }
}

impl SetFunctor for OrbitFunctor {
    fn field(&self) -> FieldPrime {
        self.base.field
    }
    fn cap(&self) -> usize {
        self.base.cap
    }
    fn size(&self, d: usize) -> u32 {
        self.reps[d].len() as u32
    }
    fn pull(&self, alpha: &Matrix, s: u32) -> u32 {
        let m = self.representative(alpha.rows(), s).mul(alpha);
        self.orbit_of_matrix(&m)
    }
    fn name(&self) -> String {
        format!("Hom(-, F_{}^{})/Gamma[{} gens]", self.base.field.p(), self.base.u, self.gamma.len())
    }
}

/// The constant functor `S(W) = {*}`.
#[derive(Clone, Debug)]
pub struct Constant {
    field: FieldPrime,
    cap: usize,
}

impl Constant {
    pub fn new(field: FieldPrime, cap: usize) -> Self {
        Constant { field, cap }
    }
}

impl SetFunctor for Constant {
    fn field(&self) -> FieldPrime {
        self.field
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn size(&self, _d: usize) -> u32 {
        1
    }
    fn pull(&self, _alpha: &Matrix, _s: u32) -> u32 {
        0
    }
    fn name(&self) -> String {
        "point".to_string()
    }
}

/// `S(W)` = the set of subspaces of `W`, with `alpha^*` the preimage. Weakly
/// noetherian with a regular element (the zero subspace) in every dimension.
#[derive(Clone, Debug)]
pub struct SubspaceFunctor {
    field: FieldPrime,
    cap: usize,
    lists: Vec<Vec<Subspace>>,
    index: Vec<HashMap<Subspace, u32>>,
}

impl SubspaceFunctor {
    pub fn new(field: FieldPrime, cap: usize) -> Self {
        let lists: Vec<Vec<Subspace>> = (0..=cap).map(|d| enumerate_subspaces(field, d)).collect();
        let index = lists
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        SubspaceFunctor {
            field,
            cap,
            lists,
            index,
        }
    }

    pub fn subspace(&self, d: usize, s: u32) -> &Subspace {
        &self.lists[d][s as usize]
    }

    pub fn element(&self, u: &Subspace) -> u32 {
        self.index[u.ambient_dim()][u]
    }
}

impl SetFunctor for SubspaceFunctor {
    fn field(&self) -> FieldPrime {
        self.field
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn size(&self, d: usize) -> u32 {
        self.lists[d].len() as u32
    }
    fn pull(&self, alpha: &Matrix, s: u32) -> u32 {
        let t = preimage(alpha, self.subspace(alpha.rows(), s)).expect("shapes agree");
        self.element(&t)
    }
    fn name(&self) -> String {
        "Sub(-)".to_string()
    }
}

/// `S(W)` = all subsets of `W`, with `alpha^* A = {v : alpha v in A}`. A
/// subset is a bitmask over the vectors of `W` (vector `v` has index
/// `sum v_i p^(d-1-i)`).
///
/// It is a functor but fails the weaker noetherianity condition: the kernel
/// of `A` is its stabiliser `{u : A + u = A}`, and pulling `{0, e1, e2}` back
/// along `t -> t e1` gives all of `F_2` while the stabiliser is zero.
#[derive(Clone, Debug)]
pub struct SubsetFunctor {
    field: FieldPrime,
    cap: usize,
}

impl SubsetFunctor {
    pub fn new(field: FieldPrime, cap: usize) -> Result<Self> {
        if pow_count(field.order(), cap) > 16 {
            return Err(Error::InvalidFunctor(format!(
                "power-set functor needs p^cap <= 16, got {}^{cap}",
                field.p()
            )));
        }
        Ok(SubsetFunctor { field, cap })
    }

    pub fn vector(&self, d: usize, mut idx: usize) -> Vec<u8> {
        let p = self.field.p() as usize;
        let mut v = vec![0u8; d];
        for i in (0..d).rev() {
            v[i] = (idx % p) as u8;
            idx /= p;
        }
        v
    }

    pub fn vector_index(&self, v: &[u8]) -> usize {
        let p = self.field.p() as usize;
        v.iter().fold(0, |acc, &x| acc * p + x as usize)
    }

    pub fn subset(&self, vectors: &[Vec<u8>]) -> u32 {
        vectors.iter().fold(0u32, |m, v| m | (1 << self.vector_index(v)))
    }
}

impl SetFunctor for SubsetFunctor {
    fn field(&self) -> FieldPrime {
        self.field
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn size(&self, d: usize) -> u32 {
        let n = self.field.order().pow(d as u32);
        if n >= 32 {
            u32::MAX
        } else {
            1u32 << n
        }
    }
    fn pull(&self, alpha: &Matrix, s: u32) -> u32 {
        let n = alpha.cols();
        let count = self.field.order().pow(n as u32) as usize;
        let mut out = 0u32;
        for i in 0..count {
            let v = self.vector(n, i);
            let w = alpha.apply(&v);
            if s & (1 << self.vector_index(&w)) != 0 {
                out |= 1 << i;
            }
        }
        out
    }
    fn name(&self) -> String {
        "Subsets(-)".to_string()
    }
}

/// `A + B`: elements of `B` are shifted past those of `A`.
#[derive(Clone)]
pub struct DisjointUnion {
    a: SetFunctorRef,
    b: SetFunctorRef,
}

impl DisjointUnion {
    pub fn new(a: SetFunctorRef, b: SetFunctorRef) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::InvalidFunctor("disjoint union over different fields".into()));
        }
        Ok(DisjointUnion { a, b })
    }
}

impl SetFunctor for DisjointUnion {
    fn field(&self) -> FieldPrime {
        self.a.field()
    }
    fn cap(&self) -> usize {
        self.a.cap().min(self.b.cap())
    }
    fn size(&self, d: usize) -> u32 {
        self.a.size(d) + self.b.size(d)
    }
    fn pull(&self, alpha: &Matrix, s: u32) -> u32 {
        let na = self.a.size(alpha.rows());
        if s < na {
            self.a.pull(alpha, s)
        } else {
            self.a.size(alpha.cols()) + self.b.pull(alpha, s - na)
        }
    }
    fn name(&self) -> String {
        format!("{} + {}", self.a.name(), self.b.name())
    }
}

/// The component `S^gamma(W) = {psi : 0^* psi = gamma}` of `S`, re-indexed
/// in increasing order of the parent index.
#[derive(Clone)]
pub struct Component {
    parent: SetFunctorRef,
    gamma: u32,
    members: Vec<Vec<u32>>,
    local: Vec<HashMap<u32, u32>>,
}

impl Component {
    pub fn new(parent: SetFunctorRef, gamma: u32) -> Self {
        let f = parent.field();
        let mut members = Vec::new();
        let mut local = Vec::new();
        for d in 0..=parent.cap() {
            let to_zero = Matrix::zeros(f, 0, d);
            let m: Vec<u32> = (0..parent.size(d))
                .filter(|&s| parent.pull(&to_zero, s) == gamma)
                .collect();
            local.push(m.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect());
            members.push(m);
        }
        Component {
            parent,
            gamma,
            members,
            local,
        }
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// Index in the parent functor of local element `s` at dimension `d`.
    pub fn parent_index(&self, d: usize, s: u32) -> u32 {
        self.members[d][s as usize]
    }
}

impl SetFunctor for Component {
    fn field(&self) -> FieldPrime {
        self.parent.field()
    }
    fn cap(&self) -> usize {
        self.parent.cap()
    }
    fn size(&self, d: usize) -> u32 {
        self.members[d].len() as u32
    }
    fn pull(&self, alpha: &Matrix, s: u32) -> u32 {
        let t = self.parent.pull(alpha, self.members[alpha.rows()][s as usize]);
        self.local[alpha.cols()][&t]
    }
    fn name(&self) -> String {
        format!("{}^[{}]", self.parent.name(), self.gamma)
    }
}
