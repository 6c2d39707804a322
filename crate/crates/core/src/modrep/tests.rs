use std::sync::Arc;

use super::*;
use crate::config::Budget;
use crate::gf::FieldPrime;

fn f(p: u32) -> FieldPrime {
    FieldPrime::new(p).unwrap()
}

fn sym_simples(n: usize, p: u32, seed: u64) -> Vec<GroupModule> {
    simple_modules(symmetric_group(n).group(), f(p), &Budget::default(), seed).unwrap()
}

#[test]
fn small_groups() {
    let t = Arc::new(FiniteGroup::trivial());
    let s = simple_modules(&t, f(2), &Budget::default(), 1).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].dim(), 1);

    assert_eq!(sym_simples(2, 2, 1).iter().map(GroupModule::dim).collect::<Vec<_>>(), vec![1]);
    assert_eq!(sym_simples(3, 2, 1).iter().map(GroupModule::dim).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(sym_simples(3, 3, 1).iter().map(GroupModule::dim).collect::<Vec<_>>(), vec![1, 1]);
}

#[test]
fn simple_counts_match_regular_partitions() {
    for p in [2u32, 3] {
        for n in 0..=4 {
            let sims = sym_simples(n, p, 7);
            assert_eq!(sims.len(), p_regular_partitions(n, p as u8).len(), "n={n} p={p}");
        }
    }
}

#[test]
fn regular_accounting_sums_to_order() {
    for (n, p) in [(3usize, 2u32), (4, 2), (4, 3)] {
        let g = symmetric_group(n).group().clone();
        let (sims, mult) = regular_accounting(&g, f(p), &Budget::default(), 3).unwrap();
        let total: usize = sims.iter().zip(&mult).map(|(s, m)| s.dim() * m).sum();
        assert_eq!(total, g.order());
    }
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let c3 = Arc::new(FiniteGroup::cyclic(3));
    let g = Arc::new(FiniteGroup::product(c2, c3));
    let (sims, mult) = regular_accounting(&g, f(2), &Budget::default(), 3).unwrap();
    // C6 over F_2: trivial plus the 2-dim module from x^2 + x + 1
    assert_eq!(sims.iter().map(GroupModule::dim).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(mult, vec![2, 2]);
}

#[test]
fn seeds_agree_up_to_isomorphism() {
    let a = sym_simples(4, 3, 1);
    let b = sym_simples(4, 3, 99);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!(iso_modules(x, y));
    }
    let a2 = sym_simples(4, 3, 1);
    assert_eq!(a, a2);
}

#[test]
fn irreducibility_and_isomorphism() {
    let s2 = symmetric_group(2);
    let reg = GroupModule::regular(s2.group().clone(), f(2));
    assert!(!is_irreducible(&reg, &Budget::default(), 0).unwrap());
    assert!(is_irreducible(&GroupModule::trivial(s2.group().clone(), f(2)), &Budget::default(), 0).unwrap());

    // a conjugate copy of the 2-dim simple of S3
    let sims = sym_simples(3, 2, 5);
    let m = &sims[1];
    let c = crate::gf::Matrix::from_rows(f(2), &[[1, 1], [0, 1]]);
    let ci = c.inverse().unwrap();
    let gens = m.generators().iter().map(|g| c.mul(g).mul(&ci)).collect();
    let conj = GroupModule::new(m.group().clone(), f(2), 2, gens).unwrap();
    assert!(iso_modules(m, &conj));
    assert!(!iso_modules(m, &m.dual().direct_sum(&sims[0]).submodule(&crate::gf::Subspace::full(f(2), 3)).unwrap()));
}

#[test]
fn bad_modules_rejected() {
    let s3 = symmetric_group(3);
    // both transpositions to one involution: the representation through the sign
    let u = crate::gf::Matrix::from_rows(f(2), &[[1, 1], [0, 1]]);
    assert!(GroupModule::new(s3.group().clone(), f(2), 2, vec![u.clone(), u]).is_ok());
    // an element of order 3 is not an involution
    let bad = crate::gf::Matrix::from_rows(f(2), &[[0, 1], [1, 1]]);
    assert!(GroupModule::new(s3.group().clone(), f(2), 2, vec![bad.clone(), bad]).is_err());
}

#[test]
fn partitions_and_regularity() {
    assert_eq!(partitions(4).len(), 5);
    assert_eq!(partitions(0).len(), 1);
    let lab: Vec<String> = p_regular_partitions(3, 2).iter().map(Partition::label).collect();
    assert_eq!(lab, vec!["(3)", "(2,1)"]);
    assert_eq!(p_regular_partitions(2, 2).len(), 1);
    assert_eq!(p_regular_partitions(4, 3).len(), 4);
    let l = Partition::new(vec![3, 1]).unwrap();
    assert_eq!(l.conjugate().parts(), &[2, 1, 1]);
    assert!(Partition::new(vec![1, 2]).is_err());
}

#[test]
fn epsilon_modules() {
    let budget = Budget::default();
    for p in [2u32, 3] {
        for n in 1..=4 {
            let sym = symmetric_group(n);
            let sims = sym_simples(n, p, 11);
            let mut mods = Vec::new();
            for lam in p_regular_partitions(n, p as u8) {
                let m = epsilon_module(&lam, &sym, f(p), SymmetrizerOrder::ColumnRowColumn, &budget).unwrap();
                assert!(sims.iter().any(|s| iso_modules(s, &m)), "n={n} p={p} {lam}");
                mods.push(m);
            }
            // distinct partitions give distinct simples
            for i in 0..mods.len() {
                for j in i + 1..mods.len() {
                    assert!(!(mods[i].dim() == mods[j].dim() && iso_modules(&mods[i], &mods[j])));
                }
            }
            let trivial = epsilon_module(&Partition::new(vec![n]).unwrap(), &sym, f(p), Default::default(), &budget).unwrap();
            assert_eq!(trivial.dim(), 1);
        }
    }
    // the literal R C R product vanishes at (2) over F_2
    let sym = symmetric_group(2);
    let lam = Partition::new(vec![2]).unwrap();
    assert!(matches!(
        epsilon_module(&lam, &sym, f(2), SymmetrizerOrder::RowColumnRow, &budget),
        Err(crate::Error::ConstructionMismatch(_))
    ));
}

#[test]
fn tableau_choice_does_not_matter() {
    let sym = symmetric_group(3);
    let lam = Partition::new(vec![2, 1]).unwrap();
    let e1 = epsilon_lambda(&lam, &sym, f(2), Default::default());
    let e2 = epsilon_with_tableau(&[vec![2, 0], vec![1]], &sym, f(2), Default::default());
    let m1 = left_ideal_module(&e1, &sym).unwrap();
    let m2 = left_ideal_module(&e2, &sym).unwrap();
    assert!(iso_modules(&m1, &m2));
}

#[test]
fn product_restriction() {
    let s2 = symmetric_group(2);
    let c3 = Arc::new(FiniteGroup::cyclic(3));
    let g = Arc::new(FiniteGroup::product(c3.clone(), s2.group().clone()));
    let sims = simple_modules(&g, f(2), &Budget::default(), 2).unwrap();
    assert_eq!(sims.len(), 2);
    let embed: Vec<usize> = (0..2).map(|b| g.factors().unwrap().0.identity() * 2 + b).collect();
    for s in &sims {
        let r = s.restrict(s2.group().clone(), &embed).unwrap();
        let factors = composition_factors(&r, &Budget::default(), 0).unwrap();
        // S2 over F_2 has only the trivial simple
        assert!(factors.iter().all(|x| x.dim() == 1));
        assert_eq!(factors.len(), s.dim());
    }
}

#[test]
fn place_permutations_form_a_right_action() {
    let sym = symmetric_group(3);
    let g = sym.group();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let pa = place_permutation(f(2), 2, sym.perm(a));
            let pb = place_permutation(f(2), 2, sym.perm(b));
            // v.(ab) = (v.a).b
            assert_eq!(place_permutation(f(2), 2, sym.perm(g.mul(a, b))), pb.mul(&pa));
            let qa = permutation_matrix(f(2), sym.perm(a));
            let qb = permutation_matrix(f(2), sym.perm(b));
            assert_eq!(permutation_matrix(f(2), sym.perm(g.mul(a, b))), qa.mul(&qb));
        }
    }
}
