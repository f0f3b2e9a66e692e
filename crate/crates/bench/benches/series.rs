use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use taukit_core::symfun::{cauchy_truncated, rat};
use taukit_core::tau::{hirota_residual, hyper_pfs};
use taukit_core::{tau_series, ContentFunction, Side, TauSpec};

fn tau(c: &mut Criterion) {
    let mut g = c.benchmark_group("tau_series");
    for d in [4usize, 6, 8] {
        g.bench_with_input(BenchmarkId::new("formal", d), &d, |b, &d| {
            let spec = TauSpec::new(ContentFunction::linear(), 2, Side::Formal(d), Side::Formal(d));
            b.iter(|| tau_series(black_box(&spec), d).unwrap())
        });
    }
    g.finish();
}

fn identities(c: &mut Criterion) {
    c.bench_function("cauchy_truncated/8", |b| b.iter(|| cauchy_truncated(black_box(8), 8)));
    let r = ContentFunction::rational(vec![rat(1, 2)], vec![rat(1, 3)]);
    c.bench_function("hirota_residual/4", |b| {
        b.iter(|| hirota_residual(black_box(&r), 0, 4, &rat(1, 1)).unwrap())
    });
    c.bench_function("hyper_pfs/2F1/30", |b| {
        b.iter(|| hyper_pfs(&[rat(1, 2), rat(1, 3)], &[rat(5, 4)], 0, Side::EigenFormal(1), black_box(30)).unwrap())
    });
}

criterion_group!(benches, tau, identities);
criterion_main!(benches);
