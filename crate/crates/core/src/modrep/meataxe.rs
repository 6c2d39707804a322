use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::group::FiniteGroup;
use super::module::{iso_modules, GroupModule};
use crate::config::{pow_count, Budget};
use crate::error::{Error, Result};
use crate::gf::{char_poly, factor, spin, FieldPrime, Matrix, Subspace};
use std::sync::Arc;

/// Largest `p^dim` for which the exhaustive vector spin is attempted.
const EXHAUSTIVE_LIMIT: u128 = 1 << 14;

/// Outcome of one splitting attempt.
enum Split {
    Proper(Subspace),
    Irreducible,
    Unknown,
}

fn spin_module(m: &GroupModule, v: &[u8]) -> Subspace {
    spin(m.field(), m.dim(), &[v.to_vec()], m.generators())
}

fn try_element(m: &GroupModule, theta: &Matrix, rng: &mut ChaCha8Rng) -> Split {
    let n = m.dim();
    let chi = char_poly(theta);
    let transposed: Vec<Matrix> = m.generators().iter().map(Matrix::transpose).collect();
    for (q, _) in factor(&chi, rng) {
        let a = q.eval_matrix(theta);
        let null = a.kernel();
        if null.is_zero() {
            continue;
        }
        let u = spin_module(m, null.basis().row(0));
        if u.dim() < n {
            return Split::Proper(u);
        }
        let null_t = a.transpose().kernel();
        let w = spin(m.field(), n, &[null_t.basis().row_vec(0)], &transposed);
        if w.dim() < n {
            // the annihilator of a proper dual submodule is a proper submodule
            return Split::Proper(w.basis().kernel());
        }
        if null.dim() == q.deg() {
            return Split::Irreducible;
        }
    }
    Split::Unknown
}

/// A proper nonzero submodule, or `None` when the module is irreducible.
pub fn find_submodule(m: &GroupModule, budget: &Budget, seed: u64) -> Result<Option<Subspace>> {
    let n = m.dim();
    if n <= 1 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.iterations {
        let theta = m.random_algebra_element(&mut rng);
        match try_element(m, &theta, &mut rng) {
            Split::Proper(u) => return Ok(Some(u)),
            Split::Irreducible => return Ok(None),
            Split::Unknown => {}
        }
    }
    let g = m.group();
    if g.order() <= 24 {
        let els = m.elements();
        for a in 0..g.order() {
            for b in a..g.order() {
                let theta = els[a].add(&els[b]);
                match try_element(m, &theta, &mut rng) {
                    Split::Proper(u) => return Ok(Some(u)),
                    Split::Irreducible => return Ok(None),
                    Split::Unknown => {}
                }
            }
        }
    }
    if pow_count(m.field().order(), n) <= EXHAUSTIVE_LIMIT {
        return Ok(exhaustive_submodule(m));
    }
    Err(Error::SplittingFailed {
        iterations: budget.iterations,
        seed,
    })
}

/// Spins every vector with leading coordinate 1.
fn exhaustive_submodule(m: &GroupModule) -> Option<Subspace> {
    let f = m.field();
    let n = m.dim();
    let total = pow_count(f.order(), n) as u64;
    for idx in 1..total {
        let mut v = vec![0u8; n];
        let mut x = idx;
        for c in v.iter_mut().rev() {
            *c = (x % f.order()) as u8;
            x /= f.order();
        }
        if v.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let u = spin_module(m, &v);
        if u.dim() < n {
            return Some(u);
        }
    }
    None
}

pub fn is_irreducible(m: &GroupModule, budget: &Budget, seed: u64) -> Result<bool> {
    Ok(m.dim() > 0 && find_submodule(m, budget, seed)?.is_none())
}

/// Composition factors in series order (bottom first).
pub fn composition_factors(m: &GroupModule, budget: &Budget, seed: u64) -> Result<Vec<GroupModule>> {
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    match find_submodule(m, budget, seed)? {
        None => Ok(vec![m.clone()]),
        Some(u) => {
            let mut out = composition_factors(&m.submodule(&u)?, budget, derive(seed, 1))?;
            out.extend(composition_factors(&m.quotient(&u)?, budget, derive(seed, 2))?);
            Ok(out)
        }
    }
}

fn derive(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k).rotate_left(17)
}

/// Multiplicity of each entry of `simples` among `factors`.
pub fn multiplicities(factors: &[GroupModule], simples: &[GroupModule]) -> Vec<usize> {
    let keys: Vec<_> = simples.iter().map(GroupModule::invariant).collect();
    let mut out = vec![0; simples.len()];
    for fm in factors {
        let k = fm.invariant();
        if let Some(i) = keys.iter().position(|x| *x == k) {
            out[i] += 1;
        }
    }
    out
}

/// The simple `F_p[G]`-modules: distinct composition factors of the regular
/// module, sorted by dimension then by element char polys.
pub fn simple_modules(group: &Arc<FiniteGroup>, field: FieldPrime, budget: &Budget, seed: u64) -> Result<Vec<GroupModule>> {
    budget.check_group(group.order())?;
    let reg = GroupModule::regular(group.clone(), field);
    let factors = composition_factors(&reg, budget, seed)?;
    let mut simples: Vec<GroupModule> = Vec::new();
    for fm in factors {
        if !simples.iter().any(|s| s.dim() == fm.dim() && s.invariant() == fm.invariant()) {
            simples.push(fm);
        }
    }
    simples.sort_by_cached_key(GroupModule::invariant);
    for (i, a) in simples.iter().enumerate() {
        for b in &simples[i + 1..] {
            if a.dim() == b.dim() && iso_modules(a, b) {
                return Err(Error::ConstructionMismatch("two listed simple modules are isomorphic".into()));
            }
        }
    }
    Ok(simples)
}

/// `|G| = sum over simples of dim * multiplicity` for the regular module.
pub fn regular_accounting(group: &Arc<FiniteGroup>, field: FieldPrime, budget: &Budget, seed: u64) -> Result<(Vec<GroupModule>, Vec<usize>)> {
    let simples = simple_modules(group, field, budget, seed)?;
    let reg = GroupModule::regular(group.clone(), field);
    let factors = composition_factors(&reg, budget, derive(seed, 7))?;
    let mult = multiplicities(&factors, &simples);
    Ok((simples, mult))
}
