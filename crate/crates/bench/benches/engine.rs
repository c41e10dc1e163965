use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use exshift_bench::random_torus;
use exshift_core::{shift_complex, EngineConfig};

fn engine(c: &mut Criterion) {
    let config = EngineConfig::default();
    let mut group = c.benchmark_group("shift_complex_torus");
    group.sample_size(10);
    for n in [8, 10, 12, 14] {
        let k = random_torus(n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &k, |b, k| {
            b.iter(|| shift_complex(k.complex(), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
