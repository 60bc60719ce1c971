use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use scf_core::bounds::{diamond_upper, duhamel_residual};
use scf_core::constructions::{build_psi, phi_eq1};
use scf_core::numerics::{eigenvalues, expm};
use scf_core::regularize::{regularize_channel, regularize_markovian, scan_path, BudgetNorm, ChannelClass, Settings};
use scf_core::sampling::{ginibre, random_channel, random_gksl, rng};
use scf_core::Superoperator;

fn bench_dense(c: &mut Criterion) {
    let mut group = c.benchmark_group("dense");
    for n in [4, 9, 16, 36] {
        let m = ginibre(n, &mut rng(n as u64));
        group.bench_with_input(BenchmarkId::new("eigenvalues", n), &m, |b, m| {
            b.iter(|| eigenvalues(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("expm", n), &m, |b, m| b.iter(|| expm(black_box(m)).unwrap()));
    }
    let a = ginibre(3, &mut rng(1));
    let bm = ginibre(3, &mut rng(2));
    group.bench_function("duhamel_q32", |b| b.iter(|| duhamel_residual(black_box(&a), black_box(&bm), 32).unwrap()));
    group.finish();
}

fn bench_channels(c: &mut Criterion) {
    let settings = Settings::default();
    let phi = random_channel(3, &mut rng(7));
    c.bench_function("diamond_upper_n3", |b| b.iter(|| diamond_upper(black_box(&phi))));
    c.bench_function("regularize_channel_n3", |b| {
        b.iter(|| regularize_channel(black_box(&phi), 1e-3, BudgetNorm::Fro, ChannelClass::Auto, &settings).unwrap())
    });
    let l = random_gksl(2, &mut rng(8));
    c.bench_function("regularize_markovian_n2", |b| {
        b.iter(|| regularize_markovian(black_box(&l), 0.1, &settings).unwrap())
    });
}

fn bench_scan(c: &mut Criterion) {
    let from = phi_eq1();
    let to: Superoperator = build_psi(2).superop;
    c.bench_function("scan_eq1_to_psi_1001", |b| b.iter(|| scan_path(black_box(&from), &to, 1001, 1e-8).unwrap()));
}

criterion_group!(benches, bench_dense, bench_channels, bench_scan);
criterion_main!(benches);
