use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spinbenford::{
    analyze_series, evaluate, integrate, magnetization_finite, scan, window_delta, ObservableKind,
};
use spinbenford_bench::{
    bench_chain, bench_window, ordered_params, paramagnetic_params, quadrature_config,
};

fn bench_quadrature(c: &mut Criterion) {
    let cfg = quadrature_config();
    c.bench_function("integrate/dispersion_kernel", |b| {
        b.iter(|| {
            integrate(
                |phi| {
                    let (s, co) = phi.sin_cos();
                    ((s * s) + (0.99 - co).powi(2)).sqrt()
                },
                0.0,
                black_box(std::f64::consts::PI),
                &cfg,
            )
            .unwrap()
        })
    });
}

fn bench_observables(c: &mut Criterion) {
    let cfg = quadrature_config();
    let mut group = c.benchmark_group("evaluate");
    for kind in ObservableKind::ALL {
        group.bench_with_input(
            BenchmarkId::new("ordered", kind.label()),
            &kind,
            |b, &kind| b.iter(|| evaluate(kind, &ordered_params(), &cfg).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("paramagnetic", kind.label()),
            &kind,
            |b, &kind| b.iter(|| evaluate(kind, &paramagnetic_params(), &cfg).unwrap()),
        );
    }
    group.finish();
}

fn bench_windows(c: &mut Criterion) {
    let cfg = quadrature_config();
    c.bench_function("window_delta/mz_198", |b| {
        b.iter(|| {
            window_delta(
                ObservableKind::Mz,
                1.0,
                black_box(0.5),
                &bench_window(198),
                &cfg,
            )
            .unwrap()
        })
    });
    c.bench_function("scan/mz_short", |b| {
        b.iter(|| {
            scan(
                ObservableKind::Mz,
                1.0,
                (black_box(0.8), 1.2),
                &bench_window(98),
                &cfg,
            )
            .unwrap()
        })
    });
}

fn bench_digit_analysis(c: &mut Criterion) {
    let values: Vec<f64> = (0..2000).map(|k| 1.01f64.powi(k)).collect();
    c.bench_function("analyze_series/geometric_2000", |b| {
        b.iter(|| analyze_series(black_box(&values)).unwrap())
    });
}

fn bench_finite_chain(c: &mut Criterion) {
    let chain = bench_chain();
    c.bench_function("magnetization_finite/n100", |b| {
        b.iter(|| magnetization_finite(&chain, &ordered_params()))
    });
}

criterion_group!(
    benches,
    bench_quadrature,
    bench_observables,
    bench_windows,
    bench_digit_analysis,
    bench_finite_chain
);
criterion_main!(benches);
