use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rector::elcat::ElCategory;
use rector::gf::{FieldPrime, Matrix};
use rector::modrep::{simple_modules, symmetric_group};
use rector::sfunctor::{all_kernels, check_weak_noetherian, Representable};
use rector::simples::simples_report;
use rector::Budget;

// deterministic dense filler, rank-deficient enough to exercise the kernel path
fn filled(field: FieldPrime, n: usize) -> Matrix {
    let p = field.p() as usize;
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, ((i * 7 + j * 13 + i * j * 3 + 1) % p) as u8);
        }
    }
    m
}

fn linear_algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for p in [2u32, 3] {
        let field = FieldPrime::new(p).unwrap();
        for n in [16usize, 64] {
            let m = filled(field, n);
            g.bench_with_input(BenchmarkId::new(format!("F{p}"), n), &m, |b, m| b.iter(|| black_box(m).rank()));
        }
    }
    g.finish();
    let m = filled(FieldPrime::TWO, 64);
    c.bench_function("kernel F2 64", |b| b.iter(|| black_box(&m).kernel()));
}

fn set_functors(c: &mut Criterion) {
    let s = Representable::new(FieldPrime::TWO, 2, 3).unwrap();
    c.bench_function("all_kernels S_U dim 3", |b| b.iter(|| all_kernels(black_box(&s), 3).unwrap()));
    let small = Representable::new(FieldPrime::TWO, 1, 3).unwrap();
    c.bench_function("weak noetherian S_U cap 3", |b| {
        b.iter(|| check_weak_noetherian(black_box(&small), &Budget::default()).unwrap())
    });
    c.bench_function("rector skeleton S_U cap 3", |b| {
        b.iter(|| ElCategory::new(Arc::new(Representable::new(FieldPrime::TWO, 2, 3).unwrap()), Budget::default()).unwrap())
    });
}

fn representations(c: &mut Criterion) {
    let g = symmetric_group(4).group().clone();
    let budget = Budget::default();
    c.bench_function("simples S_4 over F2", |b| b.iter(|| simple_modules(&g, FieldPrime::TWO, &budget, 1).unwrap()));
    let cat = ElCategory::new(Arc::new(Representable::new(FieldPrime::TWO, 1, 4).unwrap()), budget).unwrap();
    let mut grp = c.benchmark_group("classification");
    grp.sample_size(10);
    grp.bench_function("simples Hom(-,F2) n<=2", |b| b.iter(|| simples_report(&cat, 2, &budget, 1).unwrap()));
    grp.finish();
}

criterion_group!(benches, linear_algebra, set_functors, representations);
criterion_main!(benches);
