use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use coexsim::engine::{sweep_sequential, EsEmitter, Scenario};
use coexsim::linkbudget::{EsClass, Lobe};

fn scenario() -> Scenario {
    Scenario::default().with_emitter(EsEmitter::new(EsClass::Class2, Lobe::Mainlobe, 10).unwrap())
}

fn bench_sweep(c: &mut Criterion) {
    let s = scenario();
    let mut group = c.benchmark_group("sweep");
    for points in [5_000usize, 100_000, 1_000_000] {
        let stop = points as f64;
        group.bench_with_input(BenchmarkId::new("sequential", points), &stop, |b, &stop| {
            b.iter(|| sweep_sequential(black_box(&s), 1.0, stop, 1.0).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", points), &stop, |b, &stop| {
            b.iter(|| coexsim::engine::sweep_parallel(black_box(&s), 1.0, stop, 1.0).unwrap())
        });
    }
    group.finish();
}

fn bench_separation_table(c: &mut Criterion) {
    let s = scenario();
    c.bench_function("separation_table", |b| {
        b.iter(|| coexsim::engine::separation_table(black_box(&s), coexsim::rfmath::PowerRatioDb::ZERO).unwrap())
    });
}

criterion_group!(benches, bench_sweep, bench_separation_table);
criterion_main!(benches);
