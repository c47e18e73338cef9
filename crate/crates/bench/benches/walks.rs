use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ordwalk_bench::{grid_pairs, parse, tall_pairs};
use ordwalk_core::ladder::build_coloring;
use ordwalk_core::{csequence, naive, walks, ProbeSet};

fn bench_rho2(c: &mut Criterion) {
    let pairs = grid_pairs(7);
    let mut group = c.benchmark_group("rho2-grid");
    group.bench_function("closed-form", |b| {
        b.iter(|| {
            for (alpha, beta) in &pairs {
                black_box(walks::rho2(alpha, beta).unwrap());
            }
        })
    });
    group.bench_function("scan", |b| {
        b.iter(|| {
            for (alpha, beta) in &pairs {
                black_box(naive::rho2(alpha, beta).unwrap());
            }
        })
    });
    group.finish();
}

fn bench_tall_traces(c: &mut Criterion) {
    let pairs = tall_pairs();
    let mut group = c.benchmark_group("trace-tall");
    group.bench_function("closed-form", |b| {
        b.iter(|| {
            for (alpha, beta) in &pairs {
                black_box(walks::trace(alpha, beta).unwrap());
            }
        })
    });
    group.bench_function("scan", |b| {
        b.iter(|| {
            for (alpha, beta) in &pairs {
                black_box(naive::trace(alpha, beta, walks::DEFAULT_STEP_GUARD).unwrap());
            }
        })
    });
    group.finish();
}

fn bench_min_above(c: &mut Criterion) {
    let beta = parse("w^(w)");
    let alpha = parse("w^3*2 + w*40");
    let mut group = c.benchmark_group("min-above");
    group.bench_function("closed-form", |b| {
        b.iter(|| black_box(csequence::min_above(&beta, &alpha).unwrap()))
    });
    group.bench_function("scan", |b| {
        b.iter(|| black_box(naive::min_above(&beta, &alpha, 1_000_000).unwrap()))
    });
    group.finish();
}

fn bench_probe_enumeration(c: &mut Criterion) {
    let cap = parse("w^4");
    c.bench_function("probe-w4-tier2", |b| {
        b.iter(|| black_box(ProbeSet::new(&cap, 2).unwrap().len()))
    });
}

fn bench_coloring(c: &mut Criterion) {
    let gamma = parse("w^3");
    let alpha = parse("w^2*2");
    c.bench_function("coloring-build-fiber", |b| {
        b.iter(|| {
            let coloring = build_coloring(&gamma).unwrap();
            black_box(coloring.fiber_report(&alpha, 128).unwrap())
        })
    });
}

criterion_group!(
    benches,
    bench_rho2,
    bench_tall_traces,
    bench_min_above,
    bench_probe_enumeration,
    bench_coloring
);
criterion_main!(benches);
