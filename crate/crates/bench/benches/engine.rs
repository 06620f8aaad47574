use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use k3cert::bqf::{represents, represents_via_cycle};
use k3cert::certify::{certify_grid, CertifyOptions};
use k3cert::clifford::{brute_force_min_f, verify_clifford};
use k3cert::lattice::K3Config;
use k3cert::{build_certificate, QuadraticForm};
use num_bigint::BigInt;

fn bench_represents(c: &mut Criterion) {
    let mut group = c.benchmark_group("represents");
    let minus_one = BigInt::from(-1);
    // obstructed mod 3, small witness, and a form needing the full cycle
    for (a, b, cc) in [(3, 18, 18), (3, 7, 3), (1, 0, -34), (3, 301, 299)] {
        let f = QuadraticForm::new(a, b, cc);
        group.bench_with_input(BenchmarkId::new("dispatch", &f), &f, |bch, f| {
            bch.iter(|| represents(black_box(f), &minus_one).unwrap())
        });
        if f.discriminant() > BigInt::from(0) {
            group.bench_with_input(BenchmarkId::new("cycle", &f), &f, |bch, f| {
                bch.iter(|| represents_via_cycle(black_box(f), &minus_one).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_clifford(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_clifford");
    for (g, s) in [(19, 1), (100, 3), (300, 6), (1000, -1)] {
        let cfg = K3Config::new(g, s).unwrap();
        group.bench_with_input(BenchmarkId::new("region", cfg), &cfg, |b, cfg| {
            b.iter(|| verify_clifford(black_box(cfg)).unwrap())
        });
    }
    let cfg = K3Config::new(100, 3).unwrap();
    group.bench_function("brute_force_radius_60", |b| {
        b.iter(|| brute_force_min_f(black_box(&cfg), 60).unwrap())
    });
    group.finish();
}

fn bench_certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate");
    for (g, s) in [(19, 1), (16, 1), (14, 1), (500, 10)] {
        group.bench_function(format!("({g}, {s})"), |b| {
            b.iter(|| build_certificate(black_box(g), black_box(s)).unwrap())
        });
    }
    group.sample_size(10);
    group.bench_function("grid_12..=200_x_-1..=6", |b| {
        b.iter(|| certify_grid(12..=200, -1..=6, &CertifyOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_represents, bench_clifford, bench_certificate);
criterion_main!(benches);
