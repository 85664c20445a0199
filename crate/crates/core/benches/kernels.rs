//! Hot kernels under whichever backend this build uses. Run once with the
//! default features and once with `--no-default-features`; both land in the
//! same criterion groups as `parallel/...` and `sequential/...`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ldpc_exponent_core::enumerators::{alpha0, EnsembleParams};
use ldpc_exponent_core::exponent::{BoundConfig, ExponentEvaluator, ExponentProfile};
use ldpc_exponent_core::lab::{mc_block_error, sample_graph};
use ldpc_exponent_core::par;
use std::hint::black_box;

fn backend() -> &'static str {
    if par::is_parallel() {
        "parallel"
    } else {
        "sequential"
    }
}

fn small_config(p: &EnsembleParams) -> BoundConfig {
    BoundConfig {
        epsilon_grid: 24,
        eta_grid: 60,
        pair_grid: 20,
        ..BoundConfig::for_params(p).unwrap()
    }
}

fn e2_scan(c: &mut Criterion) {
    let p = EnsembleParams::new(4, 8).unwrap();
    let ev = ExponentEvaluator::new(&p, &small_config(&p)).unwrap();
    let mut g = c.benchmark_group("e2_scan");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new(backend(), "(4,8) eps=0.3"), |b| {
        b.iter(|| ev.e2(black_box(0.3)).unwrap())
    });
    g.finish();
}

fn profile(c: &mut Criterion) {
    let p = EnsembleParams::new(3, 6).unwrap();
    let cfg = small_config(&p);
    let mut g = c.benchmark_group("exponent_profile");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new(backend(), "(3,6) 24 eps"), |b| {
        b.iter(|| ExponentProfile::compute(&p, black_box(&cfg)).unwrap())
    });
    g.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let graph = sample_graph(&EnsembleParams::with_length(3, 6, 48).unwrap(), 1).unwrap();
    let mut g = c.benchmark_group("mc_block_error");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new(backend(), "N=48 2^17 trials"), |b| {
        b.iter(|| mc_block_error(&graph, black_box(0.2), 1 << 17, 5).unwrap())
    });
    g.finish();
}

fn threshold(c: &mut Criterion) {
    let mut g = c.benchmark_group("alpha0");
    g.bench_function(BenchmarkId::new(backend(), "(4,8)"), |b| b.iter(|| alpha0(black_box(4), 8).unwrap()));
    g.finish();
}

criterion_group!(benches, e2_scan, profile, monte_carlo, threshold);
criterion_main!(benches);
