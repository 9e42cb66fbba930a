use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ncqm_bench::{cubic_symbol, dense_omega, group_element, reference_label};
use ncqm_core::rational::rat;
use ncqm_core::{
    bch_multiply, canonicalize, intrinsic_canonicalization, moyal_star, omega_nc, pfaffian, williamson_frequencies,
    QuadraticForm,
};
use std::hint::black_box;

fn bench_pfaffian(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfaffian");
    for dim in [4, 6, 8] {
        let omega = dense_omega(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &omega, |b, om| b.iter(|| pfaffian(black_box(om))));
    }
    group.finish();
}

fn bench_canonicalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonicalize");
    let hbar = rat(1, 1);
    for dim in [4, 8] {
        let omega = dense_omega(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &omega, |b, om| {
            b.iter(|| canonicalize(black_box(om), &hbar))
        });
    }
    group.finish();
    let label = reference_label();
    c.bench_function("intrinsic_canonicalization", |b| b.iter(|| intrinsic_canonicalization(black_box(&label))));
}

fn bench_spectrum(c: &mut Criterion) {
    let omega = omega_nc(&reference_label());
    let m = QuadraticForm::identity(4);
    c.bench_function("williamson_frequencies", |b| b.iter(|| williamson_frequencies(black_box(&m), &omega)));
}

fn bench_star(c: &mut Criterion) {
    let omega = omega_nc(&reference_label());
    let (f, g) = (cubic_symbol(1), cubic_symbol(2));
    c.bench_function("moyal_star_cubic", |b| b.iter(|| moyal_star(black_box(&f), black_box(&g), &omega)));
}

fn bench_bch(c: &mut Criterion) {
    let (g, h) = (group_element(3), group_element(-5));
    c.bench_function("bch_multiply", |b| b.iter(|| bch_multiply(black_box(&g), black_box(&h))));
}

criterion_group!(kernels, bench_pfaffian, bench_canonicalize, bench_spectrum, bench_star, bench_bch);
criterion_main!(kernels);
