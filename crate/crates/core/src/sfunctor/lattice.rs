use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::gf::{enumerate_subspaces, FieldPrime, Matrix, Subspace};

/// A subspace `U` of `F_p^d` with its pivot projection `F_p^d -> F_p^(d-u)`
/// and section.
#[derive(Clone, Debug)]
pub struct LatticeEntry {
    pub subspace: Subspace,
    pub projection: Matrix,
    pub section: Matrix,
}

type Cache = Mutex<HashMap<(FieldPrime, usize), Arc<Vec<LatticeEntry>>>>;

/// All subspaces of `F_p^d` in enumeration order, with projections; cached.
pub fn subspace_lattice(field: FieldPrime, d: usize) -> Arc<Vec<LatticeEntry>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(field, d)) {
        return v.clone();
    }
    let entries: Vec<LatticeEntry> = enumerate_subspaces(field, d)
        .into_iter()
        .map(|u| LatticeEntry {
            projection: u.quotient_map(),
            section: u.section(),
            subspace: u,
        })
        .collect();
    let entries = Arc::new(entries);
    cache.lock().unwrap().insert((field, d), entries.clone());
    entries
}
