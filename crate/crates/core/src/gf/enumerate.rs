use super::field::FieldPrime;
use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::config::{pow_count, Budget};
use crate::error::Result;

/// All `cod x dom` matrices (maps `F_p^dom -> F_p^cod`) in index order.
pub fn enumerate_maps(
    field: FieldPrime,
    dom: usize,
    cod: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = Matrix> + Clone> {
    let count = pow_count(field.order(), dom * cod);
    budget.check_maps(count)?;
    let count = count as u64;
    Ok((0..count).map(move |i| Matrix::from_index(field, cod, dom, i)))
}

/// Number of maps `F_p^dom -> F_p^cod`.
pub fn map_count(field: FieldPrime, dom: usize, cod: usize) -> u128 {
    pow_count(field.order(), dom * cod)
}

pub fn enumerate_injections(
    field: FieldPrime,
    dom: usize,
    cod: usize,
    budget: &Budget,
) -> Result<Vec<Matrix>> {
    if dom > cod {
        return Ok(Vec::new());
    }
    Ok(enumerate_maps(field, dom, cod, budget)?
        .filter(|m| m.rank() == dom)
        .collect())
}

pub fn enumerate_invertibles(field: FieldPrime, n: usize, budget: &Budget) -> Result<Vec<Matrix>> {
    enumerate_injections(field, n, n, budget)
}

/// All subspaces of `F_p^n`, ordered by dimension, then pivot set
/// (lexicographic), then free entries in index order.
pub fn enumerate_subspaces(field: FieldPrime, n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free positions: row i, column j > pivots[i], j not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let piv = pivots.clone();
                    ((pivots[i] + 1)..n)
                        .filter(move |j| !piv.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let total = field.order().pow(free.len() as u32);
            for idx in 0..total {
                let mut m = Matrix::zeros(field, k, n);
                for (i, &c) in pivots.iter().enumerate() {
                    m.set(i, c, 1);
                }
                let mut rest = idx;
                for &(i, j) in free.iter().rev() {
                    m.set(i, j, (rest % field.order()) as u8);
                    rest /= field.order();
                }
                out.push(Subspace::from_rref_unchecked(m, pivots.clone()));
            }
        }
    }
    out
}

/// Subspaces of a fixed dimension.
pub fn enumerate_subspaces_of_dim(field: FieldPrime, n: usize, k: usize) -> Vec<Subspace> {
    enumerate_subspaces(field, n).into_iter().filter(|s| s.dim() == k).collect()
}

/// k-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    num / den
}

/// `|GL_n(F_q)|`.
pub fn gl_order(q: u64, n: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}
