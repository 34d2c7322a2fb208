//! Parallel-vs-sequential benchmarks for the data-parallel hot paths:
//! feasible-set enumeration, the per-row LP oracle, and whole-batch engine
//! runs. The sequential baseline is the same code on a one-thread pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use sdpfr::hull;
use sdpfr::io::cli::bench_batch;
use sdpfr::oracle::{self, DEFAULT_ENUM_LIMIT};
use sdpfr::reduce::FrConfig;
use sdpfr::simplex::Limits;

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

fn bench_enumeration(c: &mut Criterion) {
    let program = oracle::gen_random_with(18, 12, 0.3, 42);
    let seq = pool(1);
    let par = pool(0);
    let expected = seq.install(|| oracle::enumerate_f(&program, DEFAULT_ENUM_LIMIT).len());

    let mut group = c.benchmark_group("enumerate_f");
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new("seq", 18), &program, |b, p| {
        b.iter(|| {
            let f = seq.install(|| oracle::enumerate_f(black_box(p), DEFAULT_ENUM_LIMIT));
            assert_eq!(f.len(), expected);
        })
    });
    group.bench_with_input(BenchmarkId::new("par", 18), &program, |b, p| {
        b.iter(|| {
            let f = par.install(|| oracle::enumerate_f(black_box(p), DEFAULT_ENUM_LIMIT));
            assert_eq!(f.len(), expected);
        })
    });
    group.finish();
}

fn bench_row_oracle(c: &mut Criterion) {
    let program = oracle::gen_random_with(10, 40, 0.5, 7);
    let poly = program.to_polyhedron();
    let limits = Limits::default();
    let seq = pool(1);
    let par = pool(0);
    let expected = seq.install(|| hull::fukuda_oracle(&poly, &limits).unwrap());

    let mut group = c.benchmark_group("fukuda_oracle");
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new("seq", poly.num_ineqs()), &poly, |b, p| {
        b.iter(|| {
            let rows = seq.install(|| hull::fukuda_oracle(black_box(p), &limits).unwrap());
            assert_eq!(rows, expected);
        })
    });
    group.bench_with_input(BenchmarkId::new("par", poly.num_ineqs()), &poly, |b, p| {
        b.iter(|| {
            let rows = par.install(|| hull::fukuda_oracle(black_box(p), &limits).unwrap());
            assert_eq!(rows, expected);
        })
    });
    group.finish();
}

fn bench_engine_batch(c: &mut Criterion) {
    let programs: Vec<_> = (0..24u64)
        .map(|k| oracle::gen_random_with(2 + (k % 9) as usize, (k % 13) as usize, 0.4, k))
        .collect();
    let fr = FrConfig::default();
    let seq = pool(1);
    let par = pool(0);
    let expected = seq.install(|| bench_batch(&programs, &fr));

    let mut group = c.benchmark_group("engine_batch");
    group.sample_size(10);
    group.bench_with_input(
        BenchmarkId::new("seq", programs.len()),
        &programs,
        |b, ps| {
            b.iter(|| {
                let rows = seq.install(|| bench_batch(black_box(ps), &fr));
                assert_eq!(rows[0].reduced_instances, expected[0].reduced_instances);
            })
        },
    );
    group.bench_with_input(
        BenchmarkId::new("par", programs.len()),
        &programs,
        |b, ps| {
            b.iter(|| {
                let rows = par.install(|| bench_batch(black_box(ps), &fr));
                assert_eq!(rows[0].reduced_instances, expected[0].reduced_instances);
            })
        },
    );
    group.finish();
}

criterion_group!(benches, bench_enumeration, bench_row_oracle, bench_engine_batch);
criterion_main!(benches);
