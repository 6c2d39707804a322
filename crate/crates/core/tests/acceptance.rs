//! End-to-end acceptance run: one line per criterion, all exact.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rector::elcat::{ElCategory, ElObject, Morphism, ObjId};
use rector::gf::{enumerate_maps, kernel_space, preimage, FieldPrime, Matrix};
use rector::modrep::{
    iso_modules, p_regular_partitions, regular_accounting, simple_modules, symmetric_group, FiniteGroup, GroupModule,
};
use rector::sfunctor::{
    boxplus, check_weak_noetherian, kernel_of, regular_set, Constant, OrbitFunctor, Representable, SElement,
    SetFunctor, SetFunctorRef, SubsetFunctor,
};
use rector::simples::{
    certify_simple, default_window, enumerate_simples, iso_functors, round_trip, simples_report, support_check,
    verify_main1,
};
use rector::vfunctor::{
    adjunction_check, bar_extension_check, cross_effect, defined_classes, delta_bar, delta_bar_power, forgetful_lift,
    generated_by, injective_cogen, is_natural_sigma, polynomial_degree, triangle_identities, unit, vanishes,
    window_objects, ConstantFunctor, DeltaBar, DirectSum, ModuleOnClass, SigmaNFunctorRef, SubFunctor, TensorSigma,
    VecFunctor, VecFunctorRef, VfBuiltin,
};
use rector::Budget;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f2() -> FieldPrime {
    FieldPrime::TWO
}

fn category(s: SetFunctorRef) -> Arc<ElCategory> {
    ElCategory::new(s, Budget::default()).unwrap()
}

fn rep_cat(u: usize, cap: usize) -> Arc<ElCategory> {
    category(Arc::new(Representable::new(f2(), u, cap).unwrap()))
}

fn constant_cat(cap: usize) -> Arc<ElCategory> {
    category(Arc::new(Constant::new(f2(), cap)))
}

/// `Hom(-, F_3) / {±1}`: the class of dimension 1 has automorphism group of order 2.
fn signed_cat(cap: usize) -> Arc<ElCategory> {
    let f3 = FieldPrime::new(3).unwrap();
    let minus = Matrix::from_rows(f3, &[[2]]);
    category(Arc::new(OrbitFunctor::new(f3, 1, cap, vec![minus]).unwrap()))
}

fn tensor(cat: &Arc<ElCategory>, n: usize) -> VecFunctorRef {
    forgetful_lift(cat, VfBuiltin::Tensor(n))
}

fn constant_functor(cat: &Arc<ElCategory>, d: usize) -> VecFunctorRef {
    Arc::new(ConstantFunctor::new(cat.clone(), cat.full_window(), d))
}

fn on_class(cat: &Arc<ElCategory>, class: usize, n: usize, m: GroupModule) -> SigmaNFunctorRef {
    Arc::new(ModuleOnClass::new(cat.clone(), class, n, m).unwrap())
}

/// Trivial, regular and every simple module over `Aut(c) x S_n`.
fn test_modules(cat: &Arc<ElCategory>, class: usize, n: usize) -> Vec<(String, GroupModule)> {
    let g = ModuleOnClass::group(cat, class, n);
    let f = cat.field();
    let mut out = vec![
        ("trivial".to_string(), GroupModule::trivial(g.clone(), f)),
        ("regular".to_string(), GroupModule::regular(g.clone(), f)),
    ];
    for (i, s) in simple_modules(&g, f, &Budget::default(), 1).unwrap().into_iter().enumerate() {
        out.push((format!("simple {i}"), s));
    }
    out
}

fn c1_kernels() -> Outcome {
    let s = Representable::new(f2(), 2, 3).unwrap();
    let mut n = 0;
    for d in 0..=3 {
        for x in 0..s.size(d) {
            let k = kernel_of(&s, SElement::new(d, x)).map_err(|e| format!("kernel_of errored: {e}"))?;
            ensure(k == kernel_space(&s.matrix(d, x)), || format!("kernel mismatch at S({d})[{x}]"))?;
            n += 1;
        }
    }
    Ok(format!("{n} elements"))
}

fn c2_weak_noetherian() -> Outcome {
    let s = Representable::new(f2(), 2, 3).unwrap();
    let r = check_weak_noetherian(&s, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(r.holds() && r.complete && r.window == 3, || format!("S_U certificate failed: {r:?}"))?;
    let bad = SubsetFunctor::new(f2(), 2).unwrap();
    let r2 = check_weak_noetherian(&bad, &Budget::default()).map_err(|e| e.to_string())?;
    let cx = r2.counterexample.ok_or("crafted functor passed")?;
    // recompute the triple independently
    let ks = kernel_of(&bad, cx.s).map_err(|e| e.to_string())?;
    let kp = kernel_of(&bad, cx.pullback).map_err(|e| e.to_string())?;
    let pre = preimage(&cx.alpha, &ks).map_err(|e| e.to_string())?;
    ensure(kp != pre, || "reported triple is not a counterexample".into())?;
    Ok(format!("{} pairs certified; counterexample alpha = {}", r.pairs_checked, cx.alpha.key()))
}

/// All objects `(w + k, psi ⊞ eps_k)` for regular `psi`, with `w` and the dims.
fn assembled(s: &dyn SetFunctor, cap: usize) -> Vec<(ElObject, usize, SElement)> {
    let mut out = Vec::new();
    for w in 0..=cap {
        for psi in regular_set(s, w).unwrap() {
            for k in 0..=cap - w {
                let elt = boxplus(s, psi, k).unwrap();
                out.push((ElObject::new(elt), w, psi));
            }
        }
    }
    out
}

fn c3_block_form() -> Outcome {
    let mut pairs = 0;
    for u in 1..=2 {
        let s: SetFunctorRef = Arc::new(Representable::new(f2(), u, 3).unwrap());
        let cat = category(s.clone());
        let objs = assembled(s.as_ref(), 3);
        for (a, w, psi) in &objs {
            for (b, h, eta) in &objs {
                let brute: BTreeSet<Matrix> = cat.hom_set(*a, *b).unwrap().into_iter().map(|m| m.map).collect();
                // hom_R((W, psi), (H, eta)) by brute force
                let hom_r: Vec<Matrix> = enumerate_maps(f2(), *w, *h, cat.budget())
                    .unwrap()
                    .filter(|f| s.pull(f, eta.index) == psi.index)
                    .collect();
                let (du, dv) = (a.dim - w, b.dim - h);
                let mut blocks = BTreeSet::new();
                for f in &hom_r {
                    for g in enumerate_maps(f2(), *w, dv, cat.budget()).unwrap() {
                        for hh in enumerate_maps(f2(), du, dv, cat.budget()).unwrap() {
                            let mut m = Matrix::zeros(f2(), b.dim, a.dim);
                            m.paste(0, 0, f);
                            m.paste(*h, 0, &g);
                            m.paste(*h, *w, &hh);
                            blocks.insert(m);
                        }
                    }
                }
                ensure(brute == blocks, || format!("U=F_2^{u}: block form fails for {a:?} -> {b:?}"))?;
                let predicted = hom_r.len() as u128 * 2u128.pow(((w + du) * dv) as u32);
                ensure(brute.len() as u128 == predicted, || format!("cardinality mismatch for {a:?} -> {b:?}"))?;
                pairs += 1;
            }
        }
        for a in 0..cat.objects().len() {
            for b in 0..cat.objects().len() {
                ensure(cat.verify_block_form(a, b).unwrap(), || format!("skeletal block form {a} -> {b}"))?;
            }
        }
    }
    Ok(format!("{pairs} assembled pairs"))
}

fn c4_skeleton() -> Outcome {
    let cat = rep_cat(2, 3);
    let sk = cat.skeleton();
    let dims: Vec<usize> = sk.classes().iter().map(|c| c.dim).collect();
    ensure(dims == vec![0, 1, 1, 1, 2], || format!("class dims {dims:?}"))?;
    ensure(sk.classes().iter().all(|c| c.aut.len() == 1), || "nontrivial Aut".into())?;
    let inj = sk.check_injectivity();
    ensure(inj.holds, || format!("non-injective morphism {:?}", inj.witness))?;
    Ok(format!("5 classes, {} Rector morphisms injective", inj.morphisms_checked))
}

fn c5_delta_calculus() -> Outcome {
    for cat in [constant_cat(4), rep_cat(1, 4)] {
        ensure(vanishes(delta_bar(&constant_functor(&cat, 2)).unwrap().as_ref()), || "Δ̄(constant) != 0".into())?;
        for n in 0..=3 {
            let d = polynomial_degree(&tensor(&cat, n), 4).unwrap();
            ensure(d.degree == Some(n), || format!("degree of T^{n} is {d}"))?;
        }
    }
    let mut checks = 0;
    for cat in [constant_cat(4), rep_cat(1, 4), signed_cat(3)] {
        let fs = [tensor(&cat, 1), tensor(&cat, 2), tensor(&cat, 3), forgetful_lift(&cat, VfBuiltin::Injective(1))];
        for f in &fs {
            for n in 1..=3 {
                let Ok(d) = delta_bar_power(f, n) else { continue };
                for o in window_objects(d.as_ref()) {
                    let (_, cr) = cross_effect(f.as_ref(), o, &vec![1; n]).unwrap();
                    ensure(d.dim_at(o) == cr.dim(), || format!("Δ̄^{n} != cr_{n} for {} at {o}", f.name()))?;
                    checks += 1;
                }
            }
        }
    }
    // additivity for F in Pol_n, n <= 2
    for cat in [constant_cat(4), rep_cat(1, 4)] {
        let t1 = tensor(&cat, 1);
        let t2 = tensor(&cat, 2);
        let mixed: VecFunctorRef = Arc::new(DirectSum::new(vec![t2.clone(), t1.clone(), constant_functor(&cat, 1)]));
        for (f, n) in [(t1, 1usize), (t2, 2), (mixed, 2)] {
            let total = f.window().total;
            for o in window_objects(f.as_ref()) {
                let room = total - cat.object(o).dim;
                let cr = |xs: &[usize]| -> usize {
                    if xs.contains(&0) {
                        0
                    } else {
                        cross_effect(f.as_ref(), o, xs).unwrap().1.dim()
                    }
                };
                for split in splits(n, room) {
                    let whole: Vec<usize> = split.iter().map(|(a, b)| a + b).collect();
                    let sum: usize = (0..1u32 << n)
                        .map(|mask| {
                            let xs: Vec<usize> = split
                                .iter()
                                .enumerate()
                                .map(|(i, (a, b))| if mask >> i & 1 == 0 { *a } else { *b })
                                .collect();
                            cr(&xs)
                        })
                        .sum();
                    ensure(cr(&whole) == sum, || format!("additivity fails for {} at {o}, {split:?}", f.name()))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} dimension identities"))
}

/// Every `(a_i, b_i)` with `a_i >= 1` and total `sum (a_i + b_i) <= room`.
fn splits(n: usize, room: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in &out {
            let used: usize = s.iter().map(|(a, b)| a + b).sum();
            for a in 1..=room {
                for b in 0..=room {
                    if used + a + b <= room {
                        let mut t = s.clone();
                        t.push((a, b));
                        next.push(t);
                    }
                }
            }
        }
        out = next;
    }
    out.retain(|s| s.iter().any(|(_, b)| *b > 0));
    out
}

fn random_sub(f: &VecFunctorRef, rng: &mut ChaCha8Rng) -> SubFunctor {
    let objs: Vec<ObjId> = window_objects(f.as_ref()).into_iter().filter(|&o| f.dim_at(o) > 0).collect();
    let p = f.category().field().p();
    let seeds: Vec<(ObjId, Vec<u8>)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let o = objs[rng.gen_range(0..objs.len())];
            (o, (0..f.dim_at(o)).map(|_| rng.gen_range(0..p)).collect())
        })
        .collect();
    generated_by(f, &seeds).unwrap()
}

fn c6_exactness() -> Outcome {
    let cats = [rep_cat(1, 3), constant_cat(3), signed_cat(3)];
    let mut instances = 0;
    for (ci, cat) in cats.iter().enumerate() {
        let pool: Vec<VecFunctorRef> = vec![
            tensor(cat, 2),
            forgetful_lift(cat, VfBuiltin::Injective(1)),
            Arc::new(DirectSum::new(vec![tensor(cat, 1), tensor(cat, 2)])),
            injective_cogen(cat, cat.obj(0, 1).unwrap()).unwrap(),
        ];
        for seed in 0..8u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed * 31 + ci as u64);
            let f = pool[seed as usize % pool.len()].clone();
            let sub = random_sub(&f, &mut rng);
            let quot = sub.quotient();
            let s = sub.as_functor();
            let q: VecFunctorRef = Arc::new(sub.quotient());
            let (df, ds, dq) = (
                DeltaBar::new(f.clone()).unwrap(),
                DeltaBar::new(s.clone()).unwrap(),
                DeltaBar::new(q.clone()).unwrap(),
            );
            for o in window_objects(&df) {
                ensure(df.dim_at(o) == ds.dim_at(o) + dq.dim_at(o), || format!("dimension additivity at {o}"))?;
                let big = cat.obj(cat.object(o).class, cat.object(o).k + 1).unwrap();
                let incl = sub.subspace(big).basis().transpose();
                let proj = quot.projection(big);
                let (kf, ks, kq) = (df.kernel(o), ds.kernel(o), dq.kernel(o));
                // image of Δ̄S equals the kernel of Δ̄F -> Δ̄Q, and Δ̄F -> Δ̄Q is onto
                let img = ks.image_under(&incl);
                ensure(img.dim() == ks.dim(), || format!("Δ̄S -> Δ̄F not injective at {o}"))?;
                ensure(img == kf.intersect(sub.subspace(big)), || format!("not exact in the middle at {o}"))?;
                ensure(kf.image_under(&proj) == *kq, || format!("Δ̄F -> Δ̄Q not onto at {o}"))?;
            }
            instances += 1;
        }
    }
    ensure(instances >= 20, || "too few instances".into())?;
    Ok(format!("{instances} short exact sequences"))
}

fn c7_shears() -> Outcome {
    let mut shears = 0;
    for cat in [rep_cat(1, 3), constant_cat(3)] {
        let mut fs: Vec<(String, VecFunctorRef)> = vec![("T^2".into(), tensor(&cat, 2))];
        for c in 0..cat.skeleton().len() {
            for (name, m) in test_modules(&cat, c, 2) {
                let t: VecFunctorRef = Arc::new(TensorSigma::new(on_class(&cat, c, 2, m), cat.full_window()));
                fs.push((format!("T^2 ⊗ {name} on class {c}"), t));
            }
        }
        let field = cat.field();
        for (name, f) in &fs {
            for c in 0..cat.skeleton().len() {
                let o = cat.obj(c, 0).unwrap();
                let r = cat.object(o).dim;
                for xs in [[1usize, 1], [1, 2], [2, 1]] {
                    let Ok((big, cr)) = cross_effect(f.as_ref(), o, &xs) else { continue };
                    let k = xs[0] + xs[1];
                    for g in enumerate_maps(field, r, k, cat.budget()).unwrap() {
                        let map = cat.assemble(&Matrix::identity(field, r), &g, &Matrix::identity(field, k));
                        let a = f.act(&Morphism { src: big, dst: big, map });
                        let restricted: Vec<Vec<u8>> =
                            (0..cr.dim()).map(|i| cr.coordinates(&a.apply(cr.basis().row(i))).unwrap()).collect();
                        let m = Matrix::from_columns(field, cr.dim(), &restricted);
                        ensure(m.is_identity(), || format!("{name}: shear {} moves cr_2 at class {c}", g.key()))?;
                        shears += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{shears} shear restrictions are the identity"))
}

fn c8_bar_extension() -> Outcome {
    let rep = rep_cat(1, 3);
    let rep2 = rep_cat(2, 3);
    let signed = signed_cat(2);
    let e0 = |cat: &Arc<ElCategory>, c: usize, m: GroupModule| -> VecFunctorRef {
        Arc::new(TensorSigma::new(on_class(cat, c, 0, m), cat.full_window()))
    };
    let g = ModuleOnClass::group(&signed, 1, 0);
    let sign_simples = simple_modules(&g, signed.field(), &Budget::default(), 0).unwrap();
    let mut fs: Vec<VecFunctorRef> = vec![
        constant_functor(&rep, 1),
        constant_functor(&rep, 2),
        injective_cogen(&rep, rep.obj(1, 0).unwrap()).unwrap(),
        injective_cogen(&rep2, rep2.obj(4, 0).unwrap()).unwrap(),
        injective_cogen(&rep2, rep2.obj(2, 0).unwrap()).unwrap(),
        e0(&rep, 1, GroupModule::trivial(ModuleOnClass::group(&rep, 1, 0), rep.field())),
        Arc::new(DirectSum::new(vec![constant_functor(&rep, 1), injective_cogen(&rep, rep.obj(1, 0).unwrap()).unwrap()])),
    ];
    for m in sign_simples {
        fs.push(e0(&signed, 1, m));
    }
    for f in &fs {
        ensure(polynomial_degree(f, 1).unwrap().degree == Some(0), || format!("{} is not of degree 0", f.name()))?;
        let r = bar_extension_check(f);
        ensure(r.holds(), || format!("{}: {:?}", f.name(), r.witness))?;
    }
    Ok(format!("{} degree-0 functors", fs.len()))
}

fn c9_unit_and_adjunction() -> Outcome {
    let mut isos = 0;
    let cases = [(constant_cat(3), 3), (rep_cat(1, 4), 3), (signed_cat(3), 2)];
    for (cat, n_max) in &cases {
        for n in 0..=*n_max {
            for c in 0..cat.skeleton().len() {
                if cat.skeleton().class(c).dim + n > cat.cap() {
                    continue;
                }
                for (name, m) in test_modules(cat, c, n) {
                    let m = on_class(cat, c, n, m);
                    let t = Arc::new(TensorSigma::new(m.clone(), cat.full_window()));
                    let u = unit(&t).map_err(|e| e.to_string())?;
                    for k in defined_classes(u.delta.as_ref()) {
                        ensure(u.eta.components[k].inverse().is_some(), || format!("unit not invertible: {name}, n={n}"))?;
                    }
                    ensure(is_natural_sigma(m.as_ref(), u.delta.as_ref(), &u.eta).is_none(), || {
                        format!("unit not equivariant: {name}, n={n}, class {c}")
                    })?;
                    isos += 1;
                }
            }
        }
    }
    let cat = rep_cat(1, 3);
    let field = cat.field();
    let mut pairs = 0;
    let t1 = tensor(&cat, 1);
    let t2 = tensor(&cat, 2);
    let mixed: VecFunctorRef = Arc::new(DirectSum::new(vec![t2.clone(), t1.clone()]));
    let extra: VecFunctorRef = Arc::new(TensorSigma::new(
        on_class(&cat, 1, 2, GroupModule::regular(ModuleOnClass::group(&cat, 1, 2), field)),
        cat.full_window(),
    ));
    let targets: Vec<(usize, VecFunctorRef)> = vec![
        (1, t1.clone()),
        (1, Arc::new(DirectSum::new(vec![t1.clone(), constant_functor(&cat, 1)]))),
        (2, t2),
        (2, mixed),
        (2, t1.clone()),
        (2, extra),
    ];
    for (n, f) in &targets {
        for c in 0..cat.skeleton().len() {
            for (name, m) in test_modules(&cat, c, *n).into_iter().take(2) {
                let m = on_class(&cat, c, *n, m);
                let r = adjunction_check(&m, f).map_err(|e| e.to_string())?;
                ensure(r.holds(), || format!("Hom dims differ for {name} on class {c}, F = {}: {r:?}", f.name()))?;
                pairs += 1;
            }
        }
        let m = on_class(&cat, 0, *n, GroupModule::regular(ModuleOnClass::group(&cat, 0, *n), field));
        let tri = triangle_identities(&m, f, cat.full_window()).map_err(|e| e.to_string())?;
        ensure(tri.left, || format!("left triangle fails for n = {n}"))?;
        if polynomial_degree(f, *n + 1).unwrap().degree.is_some_and(|d| d <= *n) {
            ensure(tri.right, || format!("right triangle fails for {}", f.name()))?;
        }
    }
    ensure(pairs >= 10, || "too few pairs".into())?;
    Ok(format!("{isos} unit isomorphisms, {pairs} adjunction pairs"))
}

fn c10_main1() -> Outcome {
    let mut count = 0;
    for cat in [rep_cat(1, 3), constant_cat(3)] {
        let c = constant_functor(&cat, 1);
        let t1 = tensor(&cat, 1);
        let t2 = tensor(&cat, 2);
        let field = cat.field();
        let tm: VecFunctorRef = Arc::new(TensorSigma::new(
            on_class(&cat, 0, 2, GroupModule::regular(ModuleOnClass::group(&cat, 0, 2), field)),
            cat.full_window(),
        ));
        let cases: Vec<(VecFunctorRef, usize)> = vec![
            (c.clone(), 0),
            (injective_cogen(&cat, cat.obj(0, 0).unwrap()).unwrap(), 0),
            (t1.clone(), 1),
            (Arc::new(DirectSum::new(vec![t1.clone(), c.clone()])), 1),
            (c.clone(), 1),
            (t2.clone(), 2),
            (tm, 2),
            (Arc::new(DirectSum::new(vec![t2, t1.clone(), c])), 2),
            (t1, 2),
            (forgetful_lift(&cat, VfBuiltin::Injective(1)), 2),
        ];
        for (f, n) in cases {
            if polynomial_degree(&f, n + 1).unwrap().degree.is_none_or(|d| d > n) {
                continue;
            }
            let r = verify_main1(&f, n).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{r:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} functors"))
}

fn c11_representations() -> Outcome {
    let b = Budget::default();
    let s2 = simple_modules(symmetric_group(2).group(), f2(), &b, 1).map_err(|e| e.to_string())?;
    ensure(s2.len() == 1 && s2[0].dim() == 1, || "S_2 over F_2".into())?;
    let s3 = simple_modules(symmetric_group(3).group(), f2(), &b, 1).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = s3.iter().map(GroupModule::dim).collect();
    ensure(dims == vec![1, 2], || format!("S_3 over F_2: {dims:?}"))?;
    for p in [2, 3] {
        let f = FieldPrime::new(p).unwrap();
        for n in 0..=4 {
            let sims = simple_modules(symmetric_group(n).group(), f, &b, 1).map_err(|e| e.to_string())?;
            ensure(sims.len() == p_regular_partitions(n, f.p()).len(), || format!("S_{n} over F_{p}"))?;
        }
    }
    let mut groups: Vec<Arc<FiniteGroup>> = (1..=4).map(|n| symmetric_group(n).group().clone()).collect();
    groups.push(Arc::new(FiniteGroup::cyclic(6)));
    groups.push(ModuleOnClass::group(&signed_cat(2), 1, 2));
    for g in &groups {
        for p in [2, 3] {
            let f = FieldPrime::new(p).unwrap();
            let (sims, mult) = regular_accounting(g, f, &b, 2).map_err(|e| e.to_string())?;
            let total: usize = sims.iter().zip(&mult).map(|(s, m)| s.dim() * m).sum();
            ensure(total == g.order(), || format!("accounting for {} over F_{p}", g.name()))?;
        }
    }
    Ok(format!("{} groups accounted", groups.len()))
}

fn c12_classification() -> Outcome {
    let b = Budget::default();
    let cat = rep_cat(1, 4);
    let r = simples_report(&cat, 2, &b, 1).map_err(|e| e.to_string())?;
    ensure(r.simples.len() == 6, || format!("{} simples for Hom(-, F_2)", r.simples.len()))?;
    ensure(r.passed(), || format!("Hom(-, F_2) report: {r:?}"))?;
    // the same checks, run directly on the descriptors
    let w = default_window(&cat, 2).unwrap();
    for s in enumerate_simples(&cat, 2, w, &b, 1).map_err(|e| e.to_string())? {
        ensure(certify_simple(&s.realization, &b).unwrap().simple, || format!("{s:?} not simple"))?;
        ensure(support_check(&s.realization).ok() == Some(s.class), || format!("{s:?} support"))?;
        ensure(round_trip(&s, 0).unwrap(), || format!("{s:?} round trip"))?;
    }
    let cat = constant_cat(4);
    let r = simples_report(&cat, 3, &b, 1).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("constant report: {r:?}"))?;
    for n in 0..=3 {
        let got = r.simples.iter().filter(|s| s.n == n).count();
        ensure(got == p_regular_partitions(n, 2).len(), || format!("{got} simples of degree {n}"))?;
    }
    Ok("6 simples for Hom(-, F_2); counts 1,1,1,2 for the constant functor".into())
}

fn c13_determinism() -> Outcome {
    let b = Budget::default();
    let cat = rep_cat(1, 4);
    let a = serde_json::to_string(&simples_report(&cat, 2, &b, 7).unwrap()).unwrap();
    let a2 = serde_json::to_string(&simples_report(&rep_cat(1, 4), 2, &b, 7).unwrap()).unwrap();
    ensure(a == a2, || "same seed, different simples report".into())?;
    let r = serde_json::to_string(&cat.skeleton().report()).unwrap();
    ensure(r == serde_json::to_string(&rep_cat(1, 4).skeleton().report()).unwrap(), || "rector report differs".into())?;
    let w = default_window(&cat, 2).unwrap();
    let x = enumerate_simples(&cat, 2, w, &b, 3).unwrap();
    let y = enumerate_simples(&cat, 2, w, &b, 12345).unwrap();
    ensure(x.len() == y.len(), || "different counts across seeds".into())?;
    for s in &x {
        let matched = y.iter().any(|t| {
            t.class == s.class
                && t.n == s.n
                && iso_modules(&s.module, &t.module)
                && iso_functors(s.realization.as_ref(), t.realization.as_ref(), 0)
        });
        ensure(matched, || format!("{s:?} has no match under another seed"))?;
    }
    Ok("byte-identical reports; seeds 3 and 12345 agree up to isomorphism".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("kernel correctness", c1_kernels),
        ("weak noetherianity", c2_weak_noetherian),
        ("block form of morphisms", c3_block_form),
        ("Rector skeleton", c4_skeleton),
        ("difference calculus", c5_delta_calculus),
        ("exactness of the difference functor", c6_exactness),
        ("shears on cross effects", c7_shears),
        ("degree-0 bar extension", c8_bar_extension),
        ("unit isomorphism and adjunction", c9_unit_and_adjunction),
        ("counit kernel and cokernel degrees", c10_main1),
        ("representation engine", c11_representations),
        ("classification of simples", c12_classification),
        ("determinism", c13_determinism),
    ];
    // criterion failures are reported, not printed as panics
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(e) => Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
