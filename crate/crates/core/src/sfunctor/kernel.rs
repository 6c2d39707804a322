use rayon::prelude::*;
use serde::Serialize;

use super::builtin::Component;
use super::lattice::subspace_lattice;
use super::{pull_element, SElement, SetFunctor, SetFunctorRef};
use crate::config::{pow_count, Budget};
use crate::error::{Error, Result};
use crate::gf::{enumerate_maps, preimage, Matrix, Subspace};

/// The kernel of `x`: the unique maximal `U` such that `x` factors through the
/// projection with kernel `U`. Every subspace of `F_p^dim` is tested, and the
/// maximum is verified to contain every other candidate.
pub fn kernel_of(s: &dyn SetFunctor, x: SElement) -> Result<Subspace> {
    let lattice = subspace_lattice(s.field(), x.dim);
    let mut good: Vec<&Subspace> = Vec::new();
    for e in lattice.iter() {
        let t = s.pull(&e.section, x.index);
        if s.pull(&e.projection, t) == x.index {
            good.push(&e.subspace);
        }
    }
    let top = good.iter().map(|u| u.dim()).max().unwrap_or(0);
    let mut maximal = good.iter().filter(|u| u.dim() == top);
    let best = maximal.next().copied();
    if maximal.next().is_some() {
        return Err(Error::KernelAmbiguity {
            dim: x.dim,
            index: x.index,
        });
    }
    let best = best.expect("the zero subspace always qualifies");
    if good.iter().any(|u| !best.contains_subspace(u)) {
        return Err(Error::KernelAmbiguity {
            dim: x.dim,
            index: x.index,
        });
    }
    Ok(best.clone())
}

/// Kernels of every element of `S(F_p^d)`, in element order.
pub fn all_kernels(s: &dyn SetFunctor, d: usize) -> Result<Vec<Subspace>> {
    (0..s.size(d))
        .into_par_iter()
        .map(|i| kernel_of(s, SElement::new(d, i)))
        .collect()
}

pub fn is_regular(s: &dyn SetFunctor, x: SElement) -> Result<bool> {
    Ok(kernel_of(s, x)?.is_zero())
}

pub fn regular_set(s: &dyn SetFunctor, d: usize) -> Result<Vec<SElement>> {
    let ks = all_kernels(s, d)?;
    Ok(ks
        .iter()
        .enumerate()
        .filter(|(_, k)| k.is_zero())
        .map(|(i, _)| SElement::new(d, i as u32))
        .collect())
}

/// `psi~` together with the data identifying it: `x = projection^* element`,
/// where `projection` is the pivot projection with kernel `ker x` and
/// `section` embeds the pivot complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tilde {
    pub element: SElement,
    pub kernel: Subspace,
    pub projection: Matrix,
    pub section: Matrix,
}

pub fn tilde(s: &dyn SetFunctor, x: SElement) -> Result<Tilde> {
    let kernel = kernel_of(s, x)?;
    let projection = kernel.quotient_map();
    let section = kernel.section();
    let t = pull_element(s, &section, x);
    if s.pull(&projection, t.index) != x.index {
        return Err(Error::InvalidFunctor(format!(
            "{x} has kernel of dimension {} but does not factor through the projection",
            kernel.dim()
        )));
    }
    if !kernel_of(s, t)?.is_zero() {
        return Err(Error::WeakNoetherianViolated(format!(
            "the reduction {t} of {x} is not regular"
        )));
    }
    Ok(Tilde {
        element: t,
        kernel,
        projection,
        section,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakNoetherianCounterexample {
    pub alpha: Matrix,
    pub s: SElement,
    pub pullback: SElement,
    pub kernel_of_pullback: Subspace,
    pub preimage_of_kernel: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakNoetherianReport {
    pub cap: usize,
    /// All `alpha: F_p^n -> F_p^m` with `n, m <= window` were checked.
    pub window: usize,
    pub complete: bool,
    pub pairs_checked: u128,
    pub counterexample: Option<WeakNoetherianCounterexample>,
}

impl WeakNoetherianReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `ker(alpha^* s) = alpha^{-1}(ker s)` for every `s` and `alpha` up to
/// the largest window the budget allows. The first counterexample in
/// enumeration order (window, target dim, source dim, map, element) is
/// returned.
pub fn check_weak_noetherian(s: &dyn SetFunctor, budget: &Budget) -> Result<WeakNoetherianReport> {
    let f = s.field();
    let cap = s.cap();
    let pairs = |m: usize, n: usize| pow_count(f.order(), m * n).saturating_mul(s.size(m) as u128);
    let mut window = 0;
    let mut total: u128 = 0;
    for w in 0..=cap {
        let mut level: u128 = 0;
        for m in 0..=w {
            for n in 0..=w {
                if m.max(n) == w {
                    level = level.saturating_add(pairs(m, n));
                }
            }
        }
        if total.saturating_add(level) > budget.checks && w > 0 {
            break;
        }
        total = total.saturating_add(level);
        window = w;
    }
    let kernels: Vec<Vec<Subspace>> = (0..=window).map(|d| all_kernels(s, d)).collect::<Result<_>>()?;
    let map_budget = Budget {
        maps: u128::MAX,
        ..*budget
    };
    for w in 0..=window {
        for m in 0..=w {
            for n in 0..=w {
                if m.max(n) != w {
                    continue;
                }
                let km = &kernels[m];
                let kn = &kernels[n];
                let found = enumerate_maps(f, n, m, &map_budget)?
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .find_map_first(|alpha| {
                        (0..s.size(m)).find_map(|idx| {
                            let t = s.pull(&alpha, idx);
                            let pre = preimage(&alpha, &km[idx as usize]).expect("shapes agree");
                            (kn[t as usize] != pre).then(|| WeakNoetherianCounterexample {
                                alpha: alpha.clone(),
                                s: SElement::new(m, idx),
                                pullback: SElement::new(n, t),
                                kernel_of_pullback: kn[t as usize].clone(),
                                preimage_of_kernel: pre,
                            })
                        })
                    });
                if let Some(c) = found {
                    return Ok(WeakNoetherianReport {
                        cap,
                        window,
                        complete: window == cap,
                        pairs_checked: total,
                        counterexample: Some(c),
                    });
                }
            }
        }
    }
    Ok(WeakNoetherianReport {
        cap,
        window,
        complete: window == cap,
        pairs_checked: total,
        counterexample: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoetherianReport {
    pub cap: usize,
    /// `|reg(S)(F_p^d)|` for `d = 0..=cap`.
    pub regular_counts: Vec<usize>,
    pub max_regular_dim: Option<usize>,
    /// `reg(S)` is empty at the cap, so (given weak noetherianity) it is
    /// empty for every dimension in `max_regular_dim + 1 ..= cap`.
    pub vanishes_before_cap: bool,
    pub note: String,
}

pub fn check_noetherian(s: &dyn SetFunctor) -> Result<NoetherianReport> {
    let cap = s.cap();
    let regular_counts: Vec<usize> = (0..=cap)
        .map(|d| regular_set(s, d).map(|v| v.len()))
        .collect::<Result<_>>()?;
    let max_regular_dim = regular_counts.iter().rposition(|&c| c > 0);
    let vanishes_before_cap = max_regular_dim.is_none_or(|d| d < cap);
    let note = if vanishes_before_cap {
        format!(
            "regular elements vanish above dimension {} up to the cap {cap}; dimensions above the cap are not certified",
            max_regular_dim.map_or("-".to_string(), |d| d.to_string())
        )
    } else {
        format!("not certified noetherian within cap {cap}: regular elements exist at the cap")
    };
    Ok(NoetherianReport {
        cap,
        regular_counts,
        max_regular_dim,
        vanishes_before_cap,
        note,
    })
}

pub fn is_connected(s: &dyn SetFunctor) -> bool {
    s.size(0) == 1
}

pub fn split_components(s: &SetFunctorRef) -> Vec<Component> {
    (0..s.size(0)).map(|g| Component::new(s.clone(), g)).collect()
}

/// `eps_V`, the pullback of the unique element of `S(0)` to `F_p^v`.
pub fn epsilon(s: &dyn SetFunctor, v: usize) -> SElement {
    SElement::new(v, s.pull(&Matrix::zeros(s.field(), 0, v), 0))
}

/// `psi ⊞ eps_V`: the pullback of `psi` along the projection `[I | 0]` from
/// `F_p^(w+v)` onto `F_p^w`. Both restriction properties are checked.
pub fn boxplus(s: &dyn SetFunctor, psi: SElement, v: usize) -> Result<SElement> {
    let f = s.field();
    let w = psi.dim;
    if w + v > s.cap() {
        return Err(Error::OutsideWindow(format!(
            "{psi} boxplus eps_{v} needs dimension {} above the cap {}",
            w + v,
            s.cap()
        )));
    }
    if !is_connected(s) {
        return Err(Error::NotConnected(s.size(0) as usize));
    }
    let mut proj = Matrix::zeros(f, w, w + v);
    proj.paste(0, 0, &Matrix::identity(f, w));
    let out = pull_element(s, &proj, psi);
    let (iw, iv) = inclusions(s, w, v);
    if pull_element(s, &iw, out) != psi || pull_element(s, &iv, out) != epsilon(s, v) {
        return Err(Error::WeakNoetherianViolated(format!(
            "{psi} boxplus eps_{v} fails its restriction properties"
        )));
    }
    Ok(out)
}

fn inclusions(s: &dyn SetFunctor, w: usize, v: usize) -> (Matrix, Matrix) {
    let f = s.field();
    let mut iw = Matrix::zeros(f, w + v, w);
    iw.paste(0, 0, &Matrix::identity(f, w));
    let mut iv = Matrix::zeros(f, w + v, v);
    iv.paste(w, 0, &Matrix::identity(f, v));
    (iw, iv)
}

/// Exhaustive check that `psi ⊞ eps_V` is the only element of `S(W + V)` with
/// both restriction properties.
pub fn boxplus_is_unique(s: &dyn SetFunctor, psi: SElement, v: usize) -> Result<bool> {
    let b = boxplus(s, psi, v)?;
    let (iw, iv) = inclusions(s, psi.dim, v);
    let eps = epsilon(s, v);
    let n = s.size(psi.dim + v);
    Ok((0..n).all(|g| {
        g == b.index || s.pull(&iw, g) != psi.index || s.pull(&iv, g) != eps.index
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldPrime;
    use crate::sfunctor::{Constant, Representable, SubsetFunctor, SubspaceFunctor};

    fn s_u() -> Representable {
        Representable::new(FieldPrime::TWO, 2, 3).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let f = FieldPrime::TWO;
        let s = s_u();
        let id = s.element(&Matrix::identity(f, 2));
        assert!(kernel_of(&s, SElement::new(2, id)).unwrap().is_zero());
        assert!(kernel_of(&s, SElement::new(2, 0)).unwrap().is_full());
        let m = s.element(&Matrix::from_rows(f, &[[1, 0], [0, 0]]));
        assert_eq!(
            kernel_of(&s, SElement::new(2, m)).unwrap(),
            Subspace::span(f, 2, &[vec![0, 1]])
        );
    }

    #[test]
    fn tilde_examples() {
        let f = FieldPrime::TWO;
        let s = s_u();
        let id = SElement::new(2, s.element(&Matrix::identity(f, 2)));
        assert_eq!(tilde(&s, id).unwrap().element, id);
        assert_eq!(tilde(&s, SElement::new(2, 0)).unwrap().element, SElement::new(0, 0));
        let m = SElement::new(2, s.element(&Matrix::from_rows(f, &[[1, 0], [0, 0]])));
        let t = tilde(&s, m).unwrap();
        assert_eq!(s.matrix(1, t.element.index), Matrix::from_rows(f, &[[1], [0]]));
    }

    #[test]
    fn regular_sets() {
        let s = s_u();
        assert_eq!(regular_set(&s, 1).unwrap().len(), 3);
        assert_eq!(regular_set(&s, 0).unwrap().len(), 1);
        assert!(regular_set(&s, 3).unwrap().is_empty());
    }

    #[test]
    fn weak_noetherian_examples() {
        let b = Budget::default();
        assert!(check_weak_noetherian(&s_u(), &b).unwrap().holds());
        let c = Constant::new(FieldPrime::TWO, 0);
        let r = check_weak_noetherian(&c, &b).unwrap();
        assert!(r.holds() && r.complete);
        let bad = SubsetFunctor::new(FieldPrime::TWO, 2).unwrap();
        let r = check_weak_noetherian(&bad, &b).unwrap();
        assert!(!r.holds());
    }

    #[test]
    fn noetherian_reports() {
        let s = Representable::new(FieldPrime::TWO, 2, 4).unwrap();
        let r = check_noetherian(&s).unwrap();
        assert_eq!(r.max_regular_dim, Some(2));
        assert!(r.vanishes_before_cap);
        let r = check_noetherian(&Constant::new(FieldPrime::TWO, 3)).unwrap();
        assert_eq!(r.regular_counts, vec![1, 0, 0, 0]);
        let r = check_noetherian(&SubspaceFunctor::new(FieldPrime::TWO, 3)).unwrap();
        assert!(!r.vanishes_before_cap);
    }

    #[test]
    fn boxplus_examples() {
        let f = FieldPrime::TWO;
        let s = s_u();
        let psi = SElement::new(1, s.element(&Matrix::from_rows(f, &[[1], [0]])));
        assert_eq!(boxplus(&s, psi, 0).unwrap(), psi);
        let b = boxplus(&s, psi, 2).unwrap();
        assert_eq!(s.matrix(3, b.index), Matrix::from_rows(f, &[[1, 0, 0], [0, 0, 0]]));
        assert!(boxplus_is_unique(&s, psi, 2).unwrap());
        assert_eq!(boxplus(&s, SElement::new(0, 0), 2).unwrap(), epsilon(&s, 2));
    }
}
