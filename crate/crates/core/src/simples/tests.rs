use std::sync::Arc;

use super::*;
use crate::gf::FieldPrime;
use crate::modrep::left_ideal_module;
use crate::sfunctor::{Constant, Representable, SetFunctorRef};
use crate::vfunctor::{injective_cogen, ConstantFunctor, DirectSum, SigmaNFunctorRef};

fn constant(cap: usize) -> Arc<ElCategory> {
    let s: SetFunctorRef = Arc::new(Constant::new(FieldPrime::TWO, cap));
    ElCategory::new(s, Budget::default()).unwrap()
}

fn rep(u: usize, cap: usize) -> Arc<ElCategory> {
    let s: SetFunctorRef = Arc::new(Representable::new(FieldPrime::TWO, u, cap).unwrap());
    ElCategory::new(s, Budget::default()).unwrap()
}

fn tensor(cat: &Arc<ElCategory>, n: usize) -> VecFunctorRef {
    forgetful_lift(cat, VfBuiltin::Tensor(n))
}

fn trivial_on(cat: &Arc<ElCategory>, class: usize, n: usize) -> Arc<ModuleOnClass> {
    let g = ModuleOnClass::group(cat, class, n);
    Arc::new(ModuleOnClass::new(cat.clone(), class, n, GroupModule::trivial(g, cat.field())).unwrap())
}

#[test]
fn counts_for_hom_into_f2() {
    let cat = rep(1, 4);
    let b = Budget::default();
    let w = default_window(&cat, 2).unwrap();
    assert_eq!(w, Window::new(4, 1));
    let r = simples_report(&cat, 2, &b, 1).unwrap();
    assert_eq!(r.simples.len(), 6);
    assert_eq!(r.expected_count, 6);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn constant_functor_matches_classical_simples() {
    let cat = constant(4);
    let r = simples_report(&cat, 3, &Budget::default(), 1).unwrap();
    assert!(r.passed());
    let per_n: Vec<usize> = (0..=3).map(|n| r.simples.iter().filter(|s| s.n == n).count()).collect();
    let want: Vec<usize> = (0..=3).map(|n| p_regular_partitions(n, 2).len()).collect();
    assert_eq!(per_n, want);
    // trivial, T^1, Λ^2, Λ^3 and the two-dimensional degree-3 simple
    let at = |n: usize, lambda: &str| r.simples.iter().find(|s| s.n == n && s.lambda.as_ref().unwrap().lambda == lambda).unwrap();
    let vals = |s: &SimpleRow| s.dims.iter().map(|d| d.1).collect::<Vec<_>>();
    assert_eq!(vals(at(0, "()")), vec![1, 1, 1, 1, 1]);
    assert_eq!(vals(at(1, "(1)")), vec![0, 1, 2, 3, 4]);
    assert_eq!(vals(at(2, "(2)")), vec![0, 0, 1, 3, 6]);
    assert_eq!(vals(at(3, "(3)")), vec![0, 0, 0, 1, 4]);
    assert_eq!(at(3, "(2,1)").module_dim, 2);
}

#[test]
fn window_too_small() {
    assert!(default_window(&rep(1, 3), 2).is_err());
}

#[test]
fn tensor_before_quotient_is_not_simple() {
    // T^2 ⊗ trivial = S^2, which contains the Frobenius twist v -> v^2
    let cat = constant(3);
    let m = trivial_on(&cat, 0, 2);
    let t: VecFunctorRef = Arc::new(TensorSigma::new(m as SigmaNFunctorRef, cat.full_window()));
    let low = p_n(&t, 1);
    assert!(!low.is_zero_sub());
    let cert = certify_simple(&t, &Budget::default()).unwrap();
    assert!(!cert.simple);
    assert!(cert.witness.is_some());
}

#[test]
fn degree_zero_simples_on_a_class() {
    let cat = rep(1, 3);
    let c: VecFunctorRef = Arc::new(ConstantFunctor::new(cat.clone(), cat.full_window(), 1));
    // the constant functor is supported on both classes
    let err = support_check(&c).unwrap_err();
    assert_eq!(err.classes, vec![0, 1]);
    assert!(err.witness.is_some());
    let e0: VecFunctorRef = Arc::new(TensorSigma::new(trivial_on(&cat, 1, 0) as SigmaNFunctorRef, cat.full_window()));
    assert_eq!(support_check(&e0).unwrap(), 1);
    assert!(certify_simple(&e0, &Budget::default()).unwrap().simple);
}

#[test]
fn sum_of_simples_on_two_classes() {
    let cat = rep(1, 4);
    let w = default_window(&cat, 1).unwrap();
    let s = enumerate_simples(&cat, 1, w, &Budget::default(), 3).unwrap();
    let a = s.iter().find(|d| d.class == 0 && d.n == 1).unwrap();
    let b = s.iter().find(|d| d.class == 1 && d.n == 0).unwrap();
    let sum: VecFunctorRef = Arc::new(DirectSum::new(vec![a.realization.clone(), b.realization.clone()]));
    let err = support_check(&sum).unwrap_err();
    assert_eq!(err.classes.len(), 2);
    assert!(err.witness.is_some());
    assert!(!certify_simple(&sum, &Budget::default()).unwrap().simple);
}

#[test]
fn injective_cogen_spreads_over_classes() {
    let cat = rep(1, 3);
    let i = injective_cogen(&cat, cat.obj(1, 0).unwrap()).unwrap();
    assert!(support_check(&i).is_err());
}

#[test]
fn main1_instances() {
    let cat = rep(1, 3);
    let c: VecFunctorRef = Arc::new(ConstantFunctor::new(cat.clone(), cat.full_window(), 1));
    let t1 = tensor(&cat, 1);
    let t2 = tensor(&cat, 2);
    let m: SigmaNFunctorRef = trivial_on(&cat, 1, 1);
    let tm: VecFunctorRef = Arc::new(TensorSigma::new(m, cat.full_window()));
    let cases: Vec<(VecFunctorRef, usize)> = vec![
        (c.clone(), 0),
        (injective_cogen(&cat, cat.obj(1, 0).unwrap()).unwrap(), 0),
        (t1.clone(), 1),
        (Arc::new(DirectSum::new(vec![t1.clone(), c.clone()])), 1),
        (tm, 1),
        (t2.clone(), 2),
        (Arc::new(DirectSum::new(vec![t2, t1.clone()])), 2),
        // degree below n: Δ̄^n F = 0 and the cokernel is F
        (t1, 2),
    ];
    for (f, n) in cases {
        let r = verify_main1(&f, n).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}

#[test]
fn main1_tensor_sigma_is_iso() {
    let cat = constant(3);
    let sym = symmetric_group(2);
    let reg = GroupModule::regular(sym.group().clone(), cat.field());
    let m: SigmaNFunctorRef = Arc::new(ModuleOnClass::from_symmetric(cat.clone(), 0, 2, &reg).unwrap());
    let t: VecFunctorRef = Arc::new(TensorSigma::new(m, cat.full_window()));
    let r = verify_main1(&t, 2).unwrap();
    assert!(r.holds() && r.ker_zero && r.coker_zero, "{r:?}");
}

#[test]
fn epsilon_tensor_examples() {
    let cat = constant(3);
    let field = cat.field();
    let one = epsilon_lambda_tensor(&cat, &Partition::new(vec![1]).unwrap()).unwrap();
    assert!(one.is_whole());
    // λ = (2) over F_2: the image of 1 + τ, spanned by e_i ⊗ e_j + e_j ⊗ e_i
    let two = epsilon_lambda_tensor(&cat, &Partition::new(vec![2]).unwrap()).unwrap();
    for k in 0..=3 {
        let o = cat.obj(0, k).unwrap();
        let mut vs = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let mut v = vec![0u8; k * k];
                v[i * k + j] ^= 1;
                v[j * k + i] ^= 1;
                vs.push(v);
            }
        }
        let oracle = Subspace::span(field, k * k, &vs);
        assert_eq!(*two.subspace(o), oracle);
    }
}

#[test]
fn epsilon_tensor_properties() {
    let cat = constant(4);
    let budget = Budget::default();
    for n in 1..=3 {
        let sym = symmetric_group(n);
        for lambda in p_regular_partitions(n, 2) {
            let sub = epsilon_lambda_tensor(&cat, &lambda).unwrap();
            let f = sub.as_functor();
            assert!(p_n(&f, n - 1).is_zero_sub(), "{lambda}");
            let e = epsilon_lambda(&lambda, &sym, cat.field(), SymmetrizerOrder::default());
            let module = left_ideal_module(&e, &sym).unwrap();
            let d = DeltaBarN::new(f, n).unwrap();
            assert_eq!(d.dim_at(0), module.dim(), "{lambda}");
            let m = ModuleOnClass::from_symmetric(cat.clone(), 0, n, &module).unwrap();
            assert!(iso_sigma(&m, &d, 0), "{lambda}");
            assert_eq!(module.dim(), epsilon_module(&lambda, &sym, cat.field(), SymmetrizerOrder::default(), &budget).unwrap().dim());
        }
    }
}

#[test]
fn seeds_give_isomorphic_lists() {
    let cat = rep(1, 4);
    let b = Budget::default();
    let w = default_window(&cat, 2).unwrap();
    let a = enumerate_simples(&cat, 2, w, &b, 1).unwrap();
    let c = enumerate_simples(&cat, 2, w, &b, 99).unwrap();
    assert_eq!(a.len(), c.len());
    for x in &a {
        assert!(c.iter().any(|y| y.class == x.class && y.n == x.n && iso_modules(&x.module, &y.module)));
    }
    let r1 = serde_json::to_string(&simples_report(&cat, 2, &b, 5).unwrap()).unwrap();
    let r2 = serde_json::to_string(&simples_report(&cat, 2, &b, 5).unwrap()).unwrap();
    assert_eq!(r1, r2);
}
