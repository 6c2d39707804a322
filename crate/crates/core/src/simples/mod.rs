//! Simple functors on the category of elements: construction from simple
//! modules over `Aut x S_n`, simplicity certificates on windows, and the
//! instance-level check that `T^n ⊗ Δ̄^n F -> F` has kernel and cokernel of
//! lower degree.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Budget;
use crate::elcat::{ElCategory, ObjId, Window};
use crate::error::{Error, Result};
use crate::gf::{Echelon, Matrix, Subspace};
use crate::modrep::{
    epsilon_lambda, epsilon_module, iso_modules, p_regular_partitions, right_action, simple_modules, symmetric_group,
    GroupModule, Partition, SymmetrizerOrder,
};
use crate::vfunctor::{
    counit, defined_classes, delta_map, dims, forgetful_lift, generated_by, hom_space, hom_space_sigma, p_n,
    polynomial_degree, window_objects, DeltaBarN, ModuleOnClass, SigmaNFunctor,
    SigmaNFunctorRef, SubFunctor, TensorSigma, VecFunctor, VecFunctorRef, VfBuiltin,
};

#[cfg(test)]
mod tests;

/// `d_reg + n_max + 1`, clipped to nothing: errors if the cap is smaller.
pub fn default_window(cat: &ElCategory, n_max: usize) -> Result<Window> {
    let d = cat.skeleton().d_reg();
    let total = d + n_max + 1;
    if total > cat.cap() {
        return Err(Error::OutsideWindow(format!(
            "degree {n_max} at regular dimension {d} needs total dimension {total}, cap is {}",
            cat.cap()
        )));
    }
    Ok(Window::new(total, d))
}

fn mix(seed: u64, a: usize, b: usize) -> u64 {
    let mut x = seed ^ ((a as u64) << 32 | b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x ^= x >> 31;
    x.wrapping_mul(0xBF58_476D_1CE4_E5B9)
}

/// Multiplicity data: `M ≅ (F_p[S_n] eps_lambda)^{⊕ i}` as `S_n`-module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaData {
    pub lambda: String,
    pub i: usize,
}

pub struct SimpleDescriptor {
    pub class: usize,
    pub n: usize,
    pub module: GroupModule,
    pub source: Arc<ModuleOnClass>,
    pub tensor: Arc<TensorSigma>,
    /// `T^n ⊗ M / p_{n-1}(T^n ⊗ M)`.
    pub realization: VecFunctorRef,
    pub lambda: Option<LambdaData>,
}

impl std::fmt::Debug for SimpleDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Simple(class {}, n {}, module dim {})", self.class, self.n, self.module.dim())
    }
}

/// The restriction of a module over `Aut x S_n` to `S_n`.
pub fn restrict_to_symmetric(m: &GroupModule, n: usize) -> Result<GroupModule> {
    let sym = symmetric_group(n);
    let (a, _) = m
        .group()
        .factors()
        .ok_or_else(|| Error::InvalidGroup("module is not over a product group".into()))?;
    let order = sym.group().order();
    let embedding: Vec<usize> = (0..order).map(|s| a.identity() * order + s).collect();
    m.restrict(sym.group().clone(), &embedding)
}

/// `(lambda, i)` when the `S_n`-restriction of `m` is a multiple of one
/// `F_p[S_n] eps_lambda`; `None` when it is not isotypic.
pub fn lambda_data(m: &GroupModule, n: usize, budget: &Budget) -> Result<Option<LambdaData>> {
    let field = m.field();
    let r = restrict_to_symmetric(m, n)?;
    let sym = symmetric_group(n);
    for lambda in p_regular_partitions(n, field.p()) {
        let d = epsilon_module(&lambda, &sym, field, SymmetrizerOrder::default(), budget)?;
        if r.dim() % d.dim() != 0 {
            continue;
        }
        let i = r.dim() / d.dim();
        let mut sum = d.clone();
        for _ in 1..i {
            sum = sum.direct_sum(&d);
        }
        if iso_modules(&r, &sum) {
            return Ok(Some(LambdaData { lambda: lambda.label(), i }));
        }
    }
    Ok(None)
}

/// One simple functor per rector class `c`, degree `n <= n_max` and simple
/// `F_p[Aut(c) x S_n]`-module `M`, realized as the quotient of `T^n ⊗ M` by
/// `p_{n-1}`.
pub fn enumerate_simples(
    cat: &Arc<ElCategory>,
    n_max: usize,
    window: Window,
    budget: &Budget,
    seed: u64,
) -> Result<Vec<SimpleDescriptor>> {
    let field = cat.field();
    let mut out = Vec::new();
    for c in 0..cat.skeleton().len() {
        if cat.skeleton().class(c).dim > window.class_dim {
            continue;
        }
        for n in 0..=n_max {
            let group = ModuleOnClass::group(cat, c, n);
            budget.check_group(group.order())?;
            for m in simple_modules(&group, field, budget, mix(seed, c, n))? {
                let source = Arc::new(ModuleOnClass::new(cat.clone(), c, n, m.clone())?);
                let tensor = Arc::new(TensorSigma::new(source.clone() as SigmaNFunctorRef, window));
                let t: VecFunctorRef = tensor.clone();
                let lower = if n == 0 { SubFunctor::zero(t.clone()) } else { p_n(&t, n - 1) };
                let realization: VecFunctorRef = Arc::new(lower.quotient());
                let lambda = lambda_data(&m, n, budget)?;
                out.push(SimpleDescriptor {
                    class: c,
                    n,
                    module: m,
                    source,
                    tensor,
                    realization,
                    lambda,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityCertificate {
    pub simple: bool,
    pub window: Window,
    /// The smallest object with a nonzero value.
    pub base: Option<ObjId>,
    pub vectors_spun: usize,
    pub witness: Option<String>,
}

/// Every nonzero vector of `F(o)` spins up to all of `F(o)` under `mats`.
fn spins_irreducibly(mats: &[Matrix], dim: usize, p: u8, budget: &Budget) -> Result<(bool, usize)> {
    let field = mats.first().map(|m| m.field()).unwrap_or(crate::gf::FieldPrime::TWO);
    let count = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    budget.check_maps(count)?;
    let mut spun = 0;
    // one representative per line: first nonzero coordinate equal to 1
    for idx in 1..count as u64 {
        let v = Matrix::from_index(field, dim, 1, idx).column(0);
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        spun += 1;
        let s = crate::gf::spin(field, dim, &[v], mats);
        if s.dim() < dim {
            return Ok((false, spun));
        }
    }
    Ok((true, spun))
}

/// Certifies that `F` is simple on its window. With `o` the smallest object
/// where `F` is nonzero: (a) `F(o)` is irreducible under `End(o)`, (b) `F(o)`
/// generates `F`, and (c) no nonzero subfunctor vanishes at `o`. Then any
/// nonzero subfunctor contains `F(o)` and so is everything.
pub fn certify_simple(f: &VecFunctorRef, budget: &Budget) -> Result<SimplicityCertificate> {
    let cat = f.category();
    let field = cat.field();
    let mut objs = window_objects(f.as_ref());
    objs.sort_by_key(|&o| (cat.object(o).dim, o));
    let mut cert = SimplicityCertificate {
        simple: false,
        window: f.window(),
        base: None,
        vectors_spun: 0,
        witness: None,
    };
    let Some(&o) = objs.iter().find(|&&o| f.dim_at(o) > 0) else {
        cert.witness = Some("zero functor".into());
        return Ok(cert);
    };
    cert.base = Some(o);
    let d = f.dim_at(o);
    let ends: Vec<Matrix> = cat
        .skeleton_homs(o, o)?
        .into_iter()
        .map(|m| f.act(&crate::elcat::Morphism { src: o, dst: o, map: m }))
        .collect();
    let mut span = Echelon::new(field, d * d);
    let mut algebra = Vec::new();
    for e in ends {
        if span.insert(e.entries()) {
            algebra.push(e);
        }
    }
    let (irr, spun) = spins_irreducibly(&algebra, d, field.p(), budget)?;
    cert.vectors_spun = spun;
    if !irr {
        cert.witness = Some(format!("F at object {o} has a proper End-submodule"));
        return Ok(cert);
    }
    let seeds: Vec<(ObjId, Vec<u8>)> = (0..d).map(|i| (o, Matrix::identity(field, d).row_vec(i))).collect();
    let gen = generated_by(f, &seeds)?;
    if !gen.is_whole() {
        cert.witness = Some(format!("F at object {o} generates a proper subfunctor {gen:?}"));
        return Ok(cert);
    }
    let bounds: Vec<Subspace> = (0..cat.objects().len())
        .map(|b| {
            if !cat.in_window(b, f.window()) {
                Subspace::zero(field, 0)
            } else if b == o {
                Subspace::zero(field, d)
            } else {
                Subspace::full(field, f.dim_at(b))
            }
        })
        .collect();
    let away = SubFunctor::largest_within(f.clone(), bounds);
    if !away.is_zero_sub() {
        cert.witness = Some(format!("nonzero subfunctor vanishing at object {o}: {away:?}"));
        return Ok(cert);
    }
    cert.simple = true;
    Ok(cert)
}

#[derive(Debug)]
pub struct SupportFailure {
    pub classes: Vec<usize>,
    /// A proper nonzero subfunctor, when one was found.
    pub witness: Option<SubFunctor>,
}

/// The rector class carrying all nonzero values of `F`, or the classes it
/// spreads over together with a splitting subfunctor.
pub fn support_check(f: &VecFunctorRef) -> std::result::Result<usize, SupportFailure> {
    let cat = f.category();
    let field = cat.field();
    let objs = window_objects(f.as_ref());
    let mut classes: Vec<usize> = objs.iter().filter(|&&o| f.dim_at(o) > 0).map(|&o| cat.object(o).class).collect();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() == 1 {
        return Ok(classes[0]);
    }
    if classes.is_empty() {
        return Err(SupportFailure { classes, witness: None });
    }
    // the smallest class in the support
    let c0 = *classes.iter().min_by_key(|&&c| (cat.skeleton().class(c).dim, c)).unwrap();
    let bounds: Vec<Subspace> = (0..cat.objects().len())
        .map(|b| {
            let d = if cat.in_window(b, f.window()) { f.dim_at(b) } else { 0 };
            if cat.object(b).class == c0 {
                Subspace::zero(field, d)
            } else {
                Subspace::full(field, d)
            }
        })
        .collect();
    let away = SubFunctor::largest_within(f.clone(), bounds);
    if !away.is_zero_sub() {
        return Err(SupportFailure { classes, witness: Some(away) });
    }
    let seeds: Vec<(ObjId, Vec<u8>)> = objs
        .iter()
        .filter(|&&o| cat.object(o).class == c0)
        .flat_map(|&o| (0..f.dim_at(o)).map(move |i| (o, Matrix::identity(field, f.dim_at(o)).row_vec(i))))
        .collect();
    let witness = generated_by(f, &seeds).ok().filter(|g| !g.is_whole());
    Err(SupportFailure { classes, witness })
}

/// Tries the basis and seeded random combinations of a transformation space
/// for one invertible at every index.
fn find_invertible(basis: &[Vec<Matrix>], active: &[usize], seed: u64) -> bool {
    let Some(first) = basis.first() else {
        return false;
    };
    let field = first[active.first().copied().unwrap_or(0)].field();
    let ok = |c: &Vec<Matrix>| active.iter().all(|&i| c[i].inverse().is_some());
    if basis.iter().any(ok) {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut acc: Vec<Matrix> = first.iter().map(|m| Matrix::zeros(field, m.rows(), m.cols())).collect();
        for b in basis {
            let c = rng.gen_range(0..field.p());
            for (a, m) in acc.iter_mut().zip(b) {
                *a = a.add(&m.scale(c));
            }
        }
        if ok(&acc) {
            return true;
        }
    }
    false
}

/// Isomorphism of functors on the common window: a natural transformation
/// invertible at every object.
pub fn iso_functors(a: &dyn VecFunctor, b: &dyn VecFunctor, seed: u64) -> bool {
    let cat = a.category();
    let w = a.window().meet(b.window());
    let objs = cat.window_objects(w);
    if objs.iter().any(|&o| a.dim_at(o) != b.dim_at(o)) {
        return false;
    }
    let active: Vec<usize> = objs.iter().copied().filter(|&o| a.dim_at(o) > 0).collect();
    if active.is_empty() {
        return true;
    }
    let basis: Vec<Vec<Matrix>> = hom_space(a, b).into_iter().map(|t| t.components).collect();
    find_invertible(&basis, &active, seed)
}

/// Isomorphism of functors from Rector's category to `S_n`-modules.
pub fn iso_sigma(a: &dyn SigmaNFunctor, b: &dyn SigmaNFunctor, seed: u64) -> bool {
    let classes: Vec<usize> = defined_classes(a).into_iter().filter(|c| defined_classes(b).contains(c)).collect();
    if classes.iter().any(|&c| a.dim_at(c) != b.dim_at(c)) {
        return false;
    }
    let active: Vec<usize> = classes.into_iter().filter(|&c| a.dim_at(c) > 0).collect();
    if active.is_empty() {
        return true;
    }
    let basis: Vec<Vec<Matrix>> = hom_space_sigma(a, b).into_iter().map(|t| t.components).collect();
    find_invertible(&basis, &active, seed)
}

/// `Δ̄^n` of the realization is isomorphic to the source module.
pub fn round_trip(s: &SimpleDescriptor, seed: u64) -> Result<bool> {
    let d = DeltaBarN::new(s.realization.clone(), s.n)?;
    Ok(iso_sigma(s.source.as_ref(), &d, seed))
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleRow {
    pub class: usize,
    pub class_dim: usize,
    pub aut_order: usize,
    pub n: usize,
    pub module_dim: usize,
    pub lambda: Option<LambdaData>,
    pub degree: Option<usize>,
    pub simple: bool,
    pub support: Option<usize>,
    pub round_trip: bool,
    pub dims: Vec<(ObjId, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplesReport {
    pub p: u8,
    pub n_max: usize,
    pub window: Window,
    pub budget: Budget,
    pub seed: u64,
    /// Simplicity is certified on the window only; by the window size a
    /// degree-`n` functor on one class is assumed determined there.
    pub assumption: String,
    pub simples: Vec<SimpleRow>,
    pub pairwise_non_isomorphic: bool,
    pub expected_count: usize,
}

impl SimplesReport {
    pub fn passed(&self) -> bool {
        self.pairwise_non_isomorphic
            && self.simples.len() == self.expected_count
            && self
                .simples
                .iter()
                .all(|r| r.simple && r.support == Some(r.class) && r.round_trip && r.degree == Some(r.n))
    }
}

/// Enumerates and checks the simples of degree at most `n_max`.
pub fn simples_report(cat: &Arc<ElCategory>, n_max: usize, budget: &Budget, seed: u64) -> Result<SimplesReport> {
    let window = default_window(cat, n_max)?;
    let simples = enumerate_simples(cat, n_max, window, budget, seed)?;
    let mut rows = Vec::with_capacity(simples.len());
    for (k, s) in simples.iter().enumerate() {
        let cert = certify_simple(&s.realization, budget)?;
        let degree = polynomial_degree(&s.realization, s.n + 1)?.degree;
        rows.push(SimpleRow {
            class: s.class,
            class_dim: cat.skeleton().class(s.class).dim,
            aut_order: cat.skeleton().class(s.class).aut.len(),
            n: s.n,
            module_dim: s.module.dim(),
            lambda: s.lambda.clone(),
            degree,
            simple: cert.simple,
            support: support_check(&s.realization).ok(),
            round_trip: round_trip(s, mix(seed, k, 0))?,
            dims: dims(s.realization.as_ref()),
        });
    }
    let mut distinct = true;
    for i in 0..simples.len() {
        for j in i + 1..simples.len() {
            let (a, b) = (&simples[i], &simples[j]);
            if a.class == b.class && a.n == b.n && iso_functors(a.realization.as_ref(), b.realization.as_ref(), mix(seed, i, j)) {
                distinct = false;
            }
        }
    }
    // different classes or degrees are told apart by support and degree
    let field = cat.field();
    let mut expected = 0;
    for c in 0..cat.skeleton().len() {
        if cat.skeleton().class(c).dim <= window.class_dim {
            for n in 0..=n_max {
                expected += simple_modules(&ModuleOnClass::group(cat, c, n), field, budget, mix(seed, c, n))?.len();
            }
        }
    }
    Ok(SimplesReport {
        p: field.p(),
        n_max,
        window,
        budget: *budget,
        seed,
        assumption: format!(
            "certified on total dimension <= {}; a degree-n functor supported on one class is taken to be determined there",
            window.total
        ),
        simples: rows,
        pairwise_non_isomorphic: distinct,
        expected_count: expected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Main1Report {
    pub name: String,
    pub n: usize,
    pub window: Window,
    /// `Δ̄^n` of the counit is invertible at every class.
    pub delta_iso: bool,
    pub ker_degree: Option<usize>,
    pub coker_degree: Option<usize>,
    pub ker_zero: bool,
    pub coker_zero: bool,
}

impl Main1Report {
    /// Kernel and cokernel lie in `Pol_{n-1}` (zero when `n = 0`).
    pub fn holds(&self) -> bool {
        let low = |zero: bool, d: Option<usize>| zero || (self.n > 0 && d.is_some_and(|d| d < self.n));
        self.delta_iso && low(self.ker_zero, self.ker_degree) && low(self.coker_zero, self.coker_degree)
    }
}

/// For `F` of degree at most `n`: builds the counit `T^n ⊗ Δ̄^n F -> F`,
/// checks `Δ̄^n` of it is an isomorphism and measures the degrees of its
/// kernel and cokernel.
pub fn verify_main1(f: &VecFunctorRef, n: usize) -> Result<Main1Report> {
    let cat = f.category();
    let field = cat.field();
    let c = counit(f, n)?;
    let t: VecFunctorRef = c.tensor.clone();
    let w = t.window();
    let dt = DeltaBarN::new(t.clone(), n)?;
    let dm = delta_map(&dt, &c.module, &c.eta);
    let delta_iso = defined_classes(&dt).into_iter().all(|k| dm.components[k].inverse().is_some());
    let comps = &c.eta;
    let ker: Vec<Subspace> = (0..cat.objects().len())
        .map(|o| if cat.in_window(o, w) { comps.components[o].kernel() } else { Subspace::zero(field, 0) })
        .collect();
    let img: Vec<Subspace> = (0..cat.objects().len())
        .map(|o| if cat.in_window(o, w) { comps.components[o].image() } else { Subspace::zero(field, 0) })
        .collect();
    let ker = SubFunctor::new(t, ker)?;
    let fw: VecFunctorRef = Arc::new(crate::vfunctor::Restrict::new(f.clone(), w));
    let img = SubFunctor::new(fw, img)?;
    let coker: VecFunctorRef = Arc::new(img.quotient());
    let kf = ker.as_functor();
    let deg = |g: &VecFunctorRef| -> Result<Option<usize>> { Ok(polynomial_degree(g, n)?.degree) };
    Ok(Main1Report {
        name: f.name(),
        n,
        window: w,
        delta_iso,
        ker_degree: deg(&kf)?,
        coker_degree: deg(&coker)?,
        ker_zero: ker.is_zero_sub(),
        coker_zero: crate::vfunctor::is_zero(coker.as_ref()),
    })
}

/// `V -> V^{⊗n} . eps_lambda`, as a subfunctor of the lifted tensor power.
pub fn epsilon_lambda_tensor(cat: &Arc<ElCategory>, lambda: &Partition) -> Result<SubFunctor> {
    let n = lambda.n();
    let sym = symmetric_group(n);
    let field = cat.field();
    let e = epsilon_lambda(lambda, &sym, field, SymmetrizerOrder::default());
    let t = forgetful_lift(cat, VfBuiltin::Tensor(n));
    let subs: Vec<Subspace> = (0..cat.objects().len())
        .map(|o| {
            if cat.in_window(o, t.window()) {
                right_action(&e, &sym, cat.object(o).dim).image()
            } else {
                Subspace::zero(field, 0)
            }
        })
        .collect();
    SubFunctor::new(t, subs)
}
