use std::sync::Arc;

use serde::Serialize;

use super::group::SymmetricGroup;
use super::meataxe::is_irreducible;
use super::module::GroupModule;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::gf::{FieldPrime, Matrix, Subspace};

/// A partition of `n` into weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&x| x > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// No part occurs `p` or more times.
    pub fn is_p_regular(&self, p: u8) -> bool {
        let p = p as usize;
        let mut i = 0;
        while i < self.0.len() {
            let j = (i..self.0.len()).find(|&j| self.0[j] != self.0[i]).unwrap_or(self.0.len());
            if j - i >= p {
                return false;
            }
            i = j;
        }
        true
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// The row-reading tableau: row `i` holds consecutive integers.
    pub fn row_reading_tableau(&self) -> Vec<Vec<usize>> {
        let mut next = 0;
        self.0
            .iter()
            .map(|&len| {
                let row = (next..next + len).collect();
                next += len;
                row
            })
            .collect()
    }

    pub fn label(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        format!("({})", inner.join(","))
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// All partitions of `n`, from `(n)` down in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn p_regular_partitions(n: usize, p: u8) -> Vec<Partition> {
    partitions(n).into_iter().filter(|l| l.is_p_regular(p)).collect()
}

/// An element of `F_p[S_n]`, coefficients indexed like the permutations of
/// [`SymmetricGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub field: FieldPrime,
    pub coeffs: Vec<u8>,
}

impl GroupAlgebraElement {
    pub fn zero(field: FieldPrime, order: usize) -> Self {
        GroupAlgebraElement {
            field,
            coeffs: vec![0; order],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, rhs: &Self, sym: &SymmetricGroup) -> Self {
        let f = self.field;
        let g = sym.group();
        let mut out = GroupAlgebraElement::zero(f, g.order());
        for (a, &x) in self.coeffs.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (b, &y) in rhs.coeffs.iter().enumerate().filter(|(_, &y)| y != 0) {
                let ab = g.mul(a, b);
                out.coeffs[ab] = f.add(out.coeffs[ab], f.mul(x, y));
            }
        }
        out
    }

    /// `x -> g x` as a vector.
    fn left_translate(&self, g: usize, sym: &SymmetricGroup) -> Vec<u8> {
        let grp = sym.group();
        let mut out = vec![0u8; grp.order()];
        for (t, &c) in self.coeffs.iter().enumerate() {
            out[grp.mul(g, t)] = c;
        }
        out
    }
}

/// Which product of symmetrizers defines `eps_lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum SymmetrizerOrder {
    /// `C R C`: nonzero and generating a simple left ideal for every
    /// `p`-regular partition.
    #[default]
    ColumnRowColumn,
    /// `R C R`, which vanishes for instance at `(n)` whenever `n >= p`.
    RowColumnRow,
}

fn stabilizer_sum(blocks: &[Vec<usize>], sym: &SymmetricGroup, field: FieldPrime, signed: bool) -> GroupAlgebraElement {
    let order = sym.group().order();
    let mut out = GroupAlgebraElement::zero(field, order);
    for i in 0..order {
        let p = sym.perm(i);
        let keeps = blocks.iter().all(|b| b.iter().all(|x| b.contains(&p[*x])));
        if keeps {
            let s = if signed && sym.sign(i) < 0 { field.neg(1) } else { 1 };
            out.coeffs[i] = s;
        }
    }
    out
}

fn columns(tableau: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let width = tableau.first().map_or(0, Vec::len);
    (0..width)
        .map(|j| tableau.iter().filter_map(|r| r.get(j).copied()).collect())
        .collect()
}

pub fn row_symmetrizer(tableau: &[Vec<usize>], sym: &SymmetricGroup, field: FieldPrime) -> GroupAlgebraElement {
    stabilizer_sum(tableau, sym, field, false)
}

pub fn column_antisymmetrizer(tableau: &[Vec<usize>], sym: &SymmetricGroup, field: FieldPrime) -> GroupAlgebraElement {
    stabilizer_sum(&columns(tableau), sym, field, true)
}

pub fn epsilon_with_tableau(
    tableau: &[Vec<usize>],
    sym: &SymmetricGroup,
    field: FieldPrime,
    order: SymmetrizerOrder,
) -> GroupAlgebraElement {
    let r = row_symmetrizer(tableau, sym, field);
    let c = column_antisymmetrizer(tableau, sym, field);
    match order {
        SymmetrizerOrder::ColumnRowColumn => c.mul(&r, sym).mul(&c, sym),
        SymmetrizerOrder::RowColumnRow => r.mul(&c, sym).mul(&r, sym),
    }
}

/// `eps_lambda` on the row-reading tableau.
pub fn epsilon_lambda(lambda: &Partition, sym: &SymmetricGroup, field: FieldPrime, order: SymmetrizerOrder) -> GroupAlgebraElement {
    epsilon_with_tableau(&lambda.row_reading_tableau(), sym, field, order)
}

/// The left ideal `F_p[S_n] e` as a module.
pub fn left_ideal_module(e: &GroupAlgebraElement, sym: &SymmetricGroup) -> Result<GroupModule> {
    let f = e.field;
    let group = sym.group().clone();
    let order = group.order();
    let vectors: Vec<Vec<u8>> = (0..order).map(|g| e.left_translate(g, sym)).collect();
    let ideal = Subspace::span(f, order, &vectors);
    GroupModule::regular(group, f).submodule(&ideal)
}

/// `F_p[S_n] eps_lambda`, checked to be nonzero and irreducible.
pub fn epsilon_module(
    lambda: &Partition,
    sym: &SymmetricGroup,
    field: FieldPrime,
    order: SymmetrizerOrder,
    budget: &Budget,
) -> Result<GroupModule> {
    if lambda.n() != sym.n() {
        return Err(Error::DimensionMismatch(format!("{lambda} is not a partition of {}", sym.n())));
    }
    let e = epsilon_lambda(lambda, sym, field, order);
    if e.is_zero() {
        return Err(Error::ConstructionMismatch(format!("eps_{lambda} vanishes over F_{}", field.p())));
    }
    let m = left_ideal_module(&e, sym)?;
    if !is_irreducible(&m, budget, 0)? {
        return Err(Error::ConstructionMismatch(format!(
            "F_{}[S_{}] eps_{lambda} is reducible (dimension {})",
            field.p(),
            sym.n(),
            m.dim()
        )));
    }
    Ok(m)
}

/// Matrix of `v -> v . sigma` on `(F_p^d)^{⊗n}`, where
/// `(v_1 ⊗ ... ⊗ v_n) . sigma = v_sigma(1) ⊗ ... ⊗ v_sigma(n)`.
/// Basis index of `e_t` has the first tensor factor most significant.
pub fn place_permutation(field: FieldPrime, d: usize, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let size = d.pow(n as u32);
    let mut m = Matrix::zeros(field, size, size);
    let mut t = vec![0usize; n];
    for idx in 0..size {
        let mut x = idx;
        for slot in t.iter_mut().rev() {
            *slot = x % d;
            x /= d;
        }
        let img = (0..n).fold(0, |acc, i| acc * d + t[perm[i]]);
        m.set(img, idx, 1);
    }
    m
}

/// Matrix of the right action of a group algebra element on the tensor power.
pub fn right_action(e: &GroupAlgebraElement, sym: &SymmetricGroup, d: usize) -> Matrix {
    let f = e.field;
    let size = d.pow(sym.n() as u32);
    let mut out = Matrix::zeros(f, size, size);
    for (i, &c) in e.coeffs.iter().enumerate() {
        if c != 0 {
            out = out.add(&place_permutation(f, d, sym.perm(i)).scale(c));
        }
    }
    out
}

/// `sigma -> P_sigma` on `F_p^n` with `P_sigma e_i = e_sigma(i)`.
pub fn permutation_matrix(field: FieldPrime, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(field, n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(j, i, 1);
    }
    m
}

pub fn symmetric_group(n: usize) -> Arc<SymmetricGroup> {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: Mutex<Option<HashMap<usize, Arc<SymmetricGroup>>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .entry(n)
        .or_insert_with(|| Arc::new(SymmetricGroup::new(n)))
        .clone()
}
