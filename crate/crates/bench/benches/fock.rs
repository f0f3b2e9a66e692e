use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use taukit_core::fock::{lemma1_enumerate, trace_h0, vacuum_tau};
use taukit_core::ContentFunction;

fn fock(c: &mut Criterion) {
    let mut g = c.benchmark_group("vacuum_tau");
    for d in [3usize, 4, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| vacuum_tau(black_box(&ContentFunction::linear()), 1, d).unwrap())
        });
    }
    g.finish();
    c.bench_function("lemma1_enumerate", |b| b.iter(|| lemma1_enumerate(black_box(6), 4, 4, 4).unwrap()));
    c.bench_function("trace_h0/6", |b| {
        b.iter(|| trace_h0(black_box(&ContentFunction::one()), 0, 6).unwrap())
    });
}

criterion_group!(benches, fock);
criterion_main!(benches);
