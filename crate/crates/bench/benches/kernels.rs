//! Benchmarks for the hot kernels: the axis-pass transform against the
//! naive double sum, Kloosterman summation, and rational orbit enumeration.

use antiorb_bench::seeded_table;
use antiorb_core::finitefield::FqField;
use antiorb_core::quiver::{enumerate_rational_orbits, GradedDims};
use antiorb_core::transform::kloosterman;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_fourier(c: &mut Criterion) {
    let mut group = c.benchmark_group("fourier");
    for (dims, label) in [(vec![2u32, 1], "dims_2_1_q3"), (vec![2, 2], "dims_2_2_q3")] {
        let table = seeded_table(3, dims, 42);
        group.bench_with_input(BenchmarkId::new("axis_pass", label), &table, |b, t| {
            b.iter(|| t.fourier())
        });
        // The naive reference is quadratic; only benchmark it on the small
        // space.
        if label == "dims_2_1_q3" {
            group.bench_with_input(BenchmarkId::new("naive", label), &table, |b, t| {
                b.iter(|| t.fourier_naive())
            });
        }
    }
    group.finish();
}

fn bench_kloosterman(c: &mut Criterion) {
    let mut group = c.benchmark_group("kloosterman");
    for (m, q) in [(2usize, 9u64), (3, 7), (4, 5)] {
        let field = FqField::for_q(q).unwrap();
        let lam = field.from_index(1);
        group.bench_function(BenchmarkId::new("sum", format!("m{m}_q{q}")), |b| {
            b.iter(|| kloosterman(m, &field, &lam).unwrap())
        });
    }
    group.finish();
}

fn bench_orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbits");
    group.sample_size(10);
    for (q, dims, label) in [
        (5u64, vec![1u32, 1], "dims_1_1_q5"),
        (3, vec![2u32, 1], "dims_2_1_q3"),
    ] {
        let field = FqField::for_q(q).unwrap();
        let gd = GradedDims::new(2, dims);
        group.bench_function(BenchmarkId::new("bfs", label), |b| {
            b.iter(|| enumerate_rational_orbits(&field, &gd, 1, false, 1 << 24).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_fourier, bench_kloosterman, bench_orbits);
criterion_main!(benches);
