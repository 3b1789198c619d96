use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use goldbase::harness::{check_uniqueness, stream_checksum};
use goldbase::morphic::tsd_morphic_prefix;
use goldbase::par;
use goldbase::phicodec::{expand_greedy, expand_recursive, tsd};

const SIZES: [u64; 2] = [100_000, 1_000_000];

fn direct_generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("direct_T");
    group.sample_size(10);
    for &n in &SIZES {
        group.throughput(Throughput::Elements(n));
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| stream_checksum(&par::sequential::map_range(0..n, tsd)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| stream_checksum(&par::parallel::map_range(0..n, tsd)))
        });
    }
    group.finish();
}

fn morphic_generator(c: &mut Criterion) {
    let mut group = c.benchmark_group("morphic_T");
    for &n in &SIZES {
        group.throughput(Throughput::Elements(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| stream_checksum(&tsd_morphic_prefix(n as usize)))
        });
    }
    group.finish();
}

fn expansions(c: &mut Criterion) {
    let mut group = c.benchmark_group("expansion");
    for n in [1_000u64, 1_000_000_007, 4_000_000_000_000_000_000] {
        group.bench_with_input(BenchmarkId::new("greedy", n), &n, |b, &n| {
            b.iter(|| expand_greedy(black_box(n)))
        });
        group.bench_with_input(BenchmarkId::new("recursive", n), &n, |b, &n| {
            b.iter(|| expand_recursive(black_box(n)))
        });
    }
    group.finish();
}

fn uniqueness_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("uniqueness");
    group.sample_size(10);
    group.bench_function("N<=2000", |b| b.iter(|| check_uniqueness(black_box(2000))));
    group.finish();
}

criterion_group!(
    benches,
    direct_generators,
    morphic_generator,
    expansions,
    uniqueness_search
);
criterion_main!(benches);
