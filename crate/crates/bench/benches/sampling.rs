//! Strength-distribution sampling costs.

use criterion::{criterion_group, criterion_main, Criterion};

use normbit::sampling::{sample_cond_binomial, sample_cond_normal, sample_uniform_rate};
use normbit::RandomSource;

fn bench_samplers(c: &mut Criterion) {
    let n = 10_000;
    let mut rng = RandomSource::from_seed(3);
    c.bench_function("cond_binomial_rate_2_over_n", |b| {
        b.iter(|| sample_cond_binomial(n, 2.0 / n as f64, &mut rng).unwrap())
    });
    // (1-p)^n close to 1 exercises the first-flip-index decomposition
    c.bench_function("cond_binomial_tiny_rate", |b| {
        b.iter(|| sample_cond_binomial(n, 1e-6, &mut rng).unwrap())
    });
    c.bench_function("cond_normal_mean_2", |b| {
        b.iter(|| sample_cond_normal(2.0, 1.996, n, &mut rng).unwrap())
    });
    c.bench_function("uniform_rate_sigma_2", |b| {
        b.iter(|| sample_uniform_rate(2.0, 2, n, &mut rng))
    });
}

criterion_group!(benches, bench_samplers);
criterion_main!(benches);
