use std::sync::Arc;

use super::*;
use crate::config::Budget;
use crate::gf::{FieldPrime, Matrix, Subspace};
use crate::sfunctor::{Constant, OrbitFunctor, Representable, SElement, SetFunctorRef};

fn rep(p: u32, u: usize, cap: usize) -> (Arc<Representable>, Arc<ElCategory>) {
    let s = Arc::new(Representable::new(FieldPrime::new(p).unwrap(), u, cap).unwrap());
    let cat = ElCategory::new(s.clone() as SetFunctorRef, Budget::default()).unwrap();
    (s, cat)
}

#[test]
fn representable_skeleton() {
    let (_, cat) = rep(2, 2, 3);
    let sk = cat.skeleton();
    let dims: Vec<usize> = sk.classes().iter().map(|c| c.dim).collect();
    assert_eq!(dims, vec![0, 1, 1, 1, 2]);
    assert!(sk.classes().iter().all(|c| c.aut.len() == 1));
    let inj = sk.check_injectivity();
    assert!(inj.holds);
    assert_eq!(sk.d_reg(), 2);
}

#[test]
fn constant_and_orbit_skeletons() {
    let c: SetFunctorRef = Arc::new(Constant::new(FieldPrime::TWO, 3));
    let cat = ElCategory::new(c, Budget::default()).unwrap();
    assert_eq!(cat.skeleton().len(), 1);
    assert_eq!(cat.skeleton().class(0).aut.len(), 1);
    assert_eq!(cat.objects().len(), 4);

    let f = FieldPrime::TWO;
    let gens = vec![
        Matrix::from_rows(f, &[[0, 1], [1, 0]]),
        Matrix::from_rows(f, &[[1, 1], [0, 1]]),
    ];
    let s: SetFunctorRef = Arc::new(OrbitFunctor::new(f, 2, 2, gens).unwrap());
    let cat = ElCategory::new(s, Budget::default()).unwrap();
    let orders: Vec<usize> = cat.skeleton().classes().iter().map(|c| c.aut.len()).collect();
    // Hom(-, F_2^2) / GL_2: one class per rank, the top one with Aut = GL_2
    assert_eq!(orders, vec![1, 1, 6]);
    for c in cat.skeleton().classes() {
        assert_eq!(c.group.order(), c.aut.len());
    }

    let f3 = FieldPrime::new(3).unwrap();
    let s: SetFunctorRef = Arc::new(OrbitFunctor::new(f3, 1, 2, vec![Matrix::from_rows(f3, &[[2]])]).unwrap());
    let cat = ElCategory::new(s, Budget::default()).unwrap();
    let orders: Vec<usize> = cat.skeleton().classes().iter().map(|c| c.aut.len()).collect();
    assert_eq!(orders, vec![1, 2]);
}

#[test]
fn hom_set_examples() {
    let (s, cat) = rep(2, 2, 3);
    let f = FieldPrime::TWO;
    let zero = ElObject::new(SElement::new(0, 0));
    let h = cat.hom_set(zero, zero).unwrap();
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].map.rows(), 0);

    let psi = ElObject::new(SElement::new(1, s.element(&Matrix::from_rows(f, &[[1], [0]]))));
    let eta = ElObject::new(SElement::new(2, s.element(&Matrix::from_rows(f, &[[0, 1], [1, 1]]))));
    assert_eq!(cat.hom_set(psi, eta).unwrap().len(), 1);

    let x = ElObject::new(SElement::new(2, s.element(&Matrix::from_rows(f, &[[1, 0], [0, 0]]))));
    let hx = cat.hom_set(x, x).unwrap();
    assert_eq!(hx.len(), 4);
    for m in &hx {
        assert_eq!(m.map.get(0, 1), 0);
    }
}

#[test]
fn block_form_and_factorization() {
    for (p, u, cap) in [(2, 2, 3), (2, 1, 3), (3, 1, 2)] {
        let (_, cat) = rep(p, u, cap);
        for a in 0..cat.objects().len() {
            for b in 0..cat.objects().len() {
                assert!(cat.verify_block_form(a, b).unwrap(), "p={p} u={u} {a}->{b}");
                let (oa, ob) = (cat.object(a), cat.object(b));
                let hr = cat.skeleton().hom_r(oa.class, ob.class).len() as u128;
                let expect = hr * (p as u128).pow((oa.dim * ob.k) as u32);
                assert_eq!(cat.hom_count(a, b), expect);
            }
        }
    }
}

#[test]
fn decompose_examples() {
    let (s, cat) = rep(2, 2, 3);
    let f = FieldPrime::TWO;
    let x = ElObject::new(SElement::new(2, s.element(&Matrix::from_rows(f, &[[1, 0], [0, 0]]))));
    let d = cat.decompose(x).unwrap();
    assert_eq!(d.regular.dim, 1);
    assert_eq!(d.kernel, Subspace::span(f, 2, &[vec![0, 1]]));
    assert!(cat.is_morphism(d.iso.src, d.iso.dst, &d.iso.map));

    let reg = ElObject::new(SElement::new(2, s.element(&Matrix::identity(f, 2))));
    let d = cat.decompose(reg).unwrap();
    assert_eq!(d.regular, reg);
    assert!(d.kernel.is_zero());
    assert!(d.iso.map.is_identity());

    let eps = ElObject::new(SElement::new(2, s.element(&Matrix::zeros(f, 2, 2))));
    let d = cat.decompose(eps).unwrap();
    assert_eq!(d.regular.dim, 0);
    assert!(d.kernel.is_full());
}

#[test]
fn decomposition_is_functorial() {
    let (s, cat) = rep(2, 1, 3);
    let objs: Vec<ElObject> = (0..=2)
        .flat_map(|d| (0..crate::sfunctor::SetFunctor::size(s.as_ref(), d)).map(move |i| ElObject::new(SElement::new(d, i))))
        .collect();
    for &a in &objs {
        let id = ElMorphism { src: a, dst: a, map: Matrix::identity(FieldPrime::TWO, a.dim) };
        assert!(cat.route(&id).unwrap().map.is_identity());
        for &b in &objs {
            let ab = cat.hom_set(a, b).unwrap();
            for &c in &objs {
                let bc = cat.hom_set(b, c).unwrap();
                for g1 in &ab {
                    for g2 in &bc {
                        let comp = ElMorphism { src: a, dst: c, map: g2.map.mul(&g1.map) };
                        let (r1, r2, r12) = (cat.route(g1).unwrap(), cat.route(g2).unwrap(), cat.route(&comp).unwrap());
                        let (b1, b2, b12) = (cat.blocks(&r1), cat.blocks(&r2), cat.blocks(&r12));
                        assert_eq!(b12.f, b2.f.mul(&b1.f));
                        assert_eq!(b12.h, b2.h.mul(&b1.h));
                    }
                }
            }
        }
    }
}

#[test]
fn rector_structure() {
    let (_, cat) = rep(2, 2, 3);
    let sk = cat.skeleton();
    for a in 0..sk.len() {
        for b in 0..sk.len() {
            for m in sk.hom_r(a, b) {
                if a != b {
                    assert!(m.inverse().is_none());
                }
                // pre-composition by Aut(a) is free
                let hits = sk.class(a).aut.iter().filter(|g| &m.mul(g) == m).count();
                assert_eq!(hits, 1);
            }
        }
    }
}

#[test]
fn generators_generate() {
    for (p, u, cap) in [(2, 2, 3), (2, 1, 3), (3, 1, 2)] {
        let (_, cat) = rep(p, u, cap);
        let w = cat.full_window();
        let closure = cat.generated_closure(w);
        for a in cat.window_objects(w) {
            for b in cat.window_objects(w) {
                let homs: std::collections::BTreeSet<Matrix> = cat.skeleton_homs(a, b).unwrap().into_iter().collect();
                let got = closure.get(&(a, b)).cloned().unwrap_or_default();
                assert_eq!(got, homs, "p={p} u={u} {a}->{b}");
            }
        }
        for g in cat.generators(w).iter() {
            assert!(cat.is_skeletal_morphism(g));
        }
    }
}
