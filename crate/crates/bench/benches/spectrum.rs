use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tambara::ideal::{enumerate_ideals, nilradical, PowerChainRadical};
use tambara::spectrum::{verify_points_primes, verify_spatial_coherent_spectral};
use tambara::tambara::check_axioms;
use tambara::{fixtures, Analysis};

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms");
    for t in fixtures::functors() {
        group.bench_with_input(BenchmarkId::from_parameter(t.name()), &t, |b, t| b.iter(|| check_axioms(black_box(t))));
    }
    group.finish();
}

fn ideals(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideals");
    for t in [fixtures::const_functor(6, "C2"), fixtures::burnside(9), fixtures::const_functor(2, "S3")] {
        group.bench_with_input(BenchmarkId::new("enumerate", t.name()), &t, |b, t| {
            b.iter(|| enumerate_ideals(black_box(t)))
        });
        group.bench_with_input(BenchmarkId::new("power-chain-nilradical", t.name()), &t, |b, t| {
            b.iter(|| PowerChainRadical::new(black_box(t)).radical(&tambara::TambaraIdeal::zero(t)))
        });
        group
            .bench_with_input(BenchmarkId::new("nilradical", t.name()), &t, |b, t| b.iter(|| nilradical(black_box(t))));
    }
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum");
    for t in fixtures::functors() {
        group.bench_with_input(BenchmarkId::new("analysis", t.name()), &t, |b, t| {
            b.iter(|| Analysis::new(black_box(t.clone())))
        });
    }
    for t in [fixtures::const_functor(12, "1"), fixtures::burnside(9)] {
        let a = Analysis::new(t.clone());
        group.bench_function(BenchmarkId::new("verify", t.name()), |b| {
            b.iter(|| (verify_points_primes(black_box(&a)), verify_spatial_coherent_spectral(black_box(&a))))
        });
    }
    group.finish();
}

criterion_group!(benches, axioms, ideals, spectrum);
criterion_main!(benches);
