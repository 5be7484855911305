use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use headplace::binomial::right_binomial_test;
use headplace::null_model::enumerate_d_counts_sequential;
use headplace::FreeTree;

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_d_counts");
    group.sample_size(10);
    for n in [7usize, 8, 9] {
        let tree = FreeTree::path(n);
        group.bench_with_input(BenchmarkId::new("sequential", n), &tree, |b, t| {
            b.iter(|| enumerate_d_counts_sequential(black_box(t)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &tree, |b, t| {
            b.iter(|| headplace::null_model::enumerate_d_counts_parallel(black_box(t)))
        });
    }
    group.finish();
}

fn binomial_tail(c: &mut Criterion) {
    let mut group = c.benchmark_group("right_binomial_test");
    for (s, n) in [(369u64, 576u64), (2971, 5128)] {
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| right_binomial_test(black_box(s), black_box(n), 0.5))
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, binomial_tail);
criterion_main!(benches);
