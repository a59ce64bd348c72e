use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use entrocrit::criteria::{chain_report, ppt};
use entrocrit::entropy::full_grid;
use entrocrit::numkernel::{eigh, kron};
use entrocrit::states::random::{random_hermitian, random_mixed_with, rng_for};
use entrocrit::{werner, BipartiteDims, Tolerances};

fn bench_eigh(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigh");
    for n in [4, 9, 16, 25] {
        let h = random_hermitian(&mut rng_for(1, n as u64), n, 1.0);
        g.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| eigh(black_box(h)).unwrap()));
    }
    g.finish();
}

fn bench_kron(c: &mut Criterion) {
    let mut g = c.benchmark_group("kron");
    for n in [2, 4, 8] {
        let mut rng = rng_for(2, n as u64);
        let a = random_hermitian(&mut rng, n, 1.0);
        let b = random_hermitian(&mut rng, n, 1.0);
        g.bench_function(BenchmarkId::from_parameter(n), |bench| {
            bench.iter(|| kron(black_box(&a), black_box(&b)).unwrap())
        });
    }
    g.finish();
}

fn bench_criteria(c: &mut Criterion) {
    let tol = Tolerances::default();
    let grid = full_grid();
    let mut g = c.benchmark_group("chain_report");
    for d in [2, 3, 4] {
        let dims = BipartiteDims::new(d, d).unwrap();
        let rho = random_mixed_with(&mut rng_for(3, d as u64), dims, d * d).unwrap();
        g.bench_function(BenchmarkId::new("random", d), |b| {
            b.iter(|| chain_report(black_box(&rho), None, &grid, &tol).unwrap())
        });
    }
    let w = werner(5, 0.7).unwrap();
    g.bench_function("werner_5", |b| b.iter(|| chain_report(black_box(&w), None, &grid, &tol).unwrap()));
    g.finish();

    c.bench_function("ppt/werner_5", |b| b.iter(|| ppt(black_box(&w), &tol).unwrap()));
}

criterion_group!(benches, bench_eigh, bench_kron, bench_criteria);
criterion_main!(benches);
