use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subconc::classify::{is_fractionally_subadditive, is_submodular};
use subconc::dist::{exact_distribution, sample, symmetric_distribution};
use subconc::rational::rational;
use subconc::selfbound::{min_extension, minimal_a};
use subconc::setfn::staircase;
use subconc::{classify, BernoulliProduct, Generated};
use subconc_bench::{budget_additive, coverage};

fn classes(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for n in [6, 8, 10] {
        let f = coverage(n).unwrap();
        group.bench_with_input(BenchmarkId::new("full_report", n), &f, |b, f| {
            b.iter(|| classify(black_box(f)))
        });
        group.bench_with_input(BenchmarkId::new("submodular", n), &f, |b, f| {
            b.iter(|| is_submodular(black_box(f)))
        });
    }
    for n in [8, 10] {
        let f = budget_additive(n).unwrap();
        group.bench_with_input(BenchmarkId::new("xos_budget_additive", n), &f, |b, f| {
            b.iter(|| is_fractionally_subadditive(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn distributions(c: &mut Criterion) {
    let mut group = c.benchmark_group("distribution");
    group.sample_size(10);
    for n in [12, 16, 20] {
        let f = coverage(n).unwrap();
        let bp = BernoulliProduct::uniform(n, rational(1, 3)).unwrap();
        group.bench_with_input(BenchmarkId::new("exact_dense", n), &f, |b, f| {
            b.iter(|| exact_distribution(black_box(f), &bp).unwrap())
        });
    }
    for n in [2500, 10000, 40000] {
        let g = staircase(n).unwrap();
        let half = rational(1, 2);
        group.bench_with_input(BenchmarkId::new("symmetric_staircase", n), &g, |b, g| {
            b.iter(|| symmetric_distribution(black_box(g), &half).unwrap())
        });
    }
    let f = Generated::Dense(coverage(16).unwrap());
    let bp = BernoulliProduct::uniform(16, rational(1, 3)).unwrap();
    group.bench_function("sample_dense_16_x100000", |b| {
        b.iter(|| sample(black_box(&f), &bp, 100_000, 7).unwrap())
    });
    group.finish();
}

fn self_bounding(c: &mut Criterion) {
    let mut group = c.benchmark_group("selfbound");
    group.sample_size(10);
    for n in [12, 16] {
        let f = coverage(n).unwrap();
        group.bench_with_input(BenchmarkId::new("minimal_a", n), &f, |b, f| {
            b.iter(|| {
                let w = min_extension(black_box(f)).unwrap();
                minimal_a(f, &w, &rational(0, 1)).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, classes, distributions, self_bounding);
criterion_main!(benches);
