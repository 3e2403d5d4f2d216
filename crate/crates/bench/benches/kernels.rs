use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperxform::identities::{check_identity, IdentityId};
use hyperxform::series::{evaluate, DEFAULT_MAX_TERMS};
use hyperxform::slater::{verify_slater, SlaterConfiguration};
use hyperxform_bench::{context, draw, series};

fn series_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    for digits in [30, 50, 100] {
        let ctx = context(digits);
        let inside = series(&[0.3, 0.7], &[1.9], 0.5, &ctx);
        group.bench_with_input(BenchmarkId::new("2F1 at 1/2", digits), &inside, |b, s| {
            b.iter(|| evaluate(s, &ctx, DEFAULT_MAX_TERMS).unwrap())
        });
        let unit = series(&[0.3, 0.4, 0.5], &[1.6, 2.2], 1.0, &ctx);
        group.bench_with_input(BenchmarkId::new("3F2 at 1", digits), &unit, |b, s| {
            b.iter(|| evaluate(s, &ctx, DEFAULT_MAX_TERMS).unwrap())
        });
        let alternating = series(&[1.2, 1.6, 0.3, 0.4, 0.5], &[0.4, 1.9, 1.8, 1.7], -1.0, &ctx);
        group.bench_with_input(BenchmarkId::new("5F4 at -1", digits), &alternating, |b, s| {
            b.iter(|| evaluate(s, &ctx, DEFAULT_MAX_TERMS).unwrap())
        });
    }
    group.finish();
}

fn identity_checks(c: &mut Criterion) {
    let ctx = context(50);
    let mut group = c.benchmark_group("check");
    for id in [
        IdentityId::GaussUnit,
        IdentityId::WellPoised5F4MinusOne,
        IdentityId::ShiftedPair5F4MinusOne,
        IdentityId::TerminatingWellPoised5F4,
    ] {
        let p = draw(id, 1);
        group.bench_function(id.alias(), |b| b.iter(|| check_identity(id, &p, &ctx, 1e-8)));
    }
    group.finish();
}

fn double_series(c: &mut Criterion) {
    let ctx = context(50);
    let cfg = SlaterConfiguration::sample_envelope(3, ctx.bits());
    let mut group = c.benchmark_group("slater");
    group.sample_size(10);
    group.bench_function("envelope draw", |b| b.iter(|| verify_slater(&cfg, &ctx, 1e-20)));
    group.finish();
}

criterion_group!(benches, series_evaluation, identity_checks, double_series);
criterion_main!(benches);
