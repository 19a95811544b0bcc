//! Single-worker versus full-pool timings of the parallel hot spots.
//!
//! With `--no-default-features` both variants run the sequential code path,
//! which gives the baseline without rayon overhead.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polyvert::decomposition::{algebraic_vertices, decompose_simplices};
use polyvert::io::gallery_scene;
use polyvert::kernel::arrangement;
use polyvert::par::with_workers;
use polyvert::transform::{is_zero_with, transform_function, ZeroTest};

fn pools() -> Vec<(String, usize)> {
    let n = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut out = vec![("sequential".to_string(), 1)];
    if cfg!(feature = "parallel") {
        out.push((format!("parallel-{n}"), n));
    }
    out
}

fn bench_vertices(c: &mut Criterion) {
    let mut group = c.benchmark_group("algebraic_vertices");
    group.sample_size(10);
    for name in ["lshape", "schonhardt", "random-0"] {
        let f = gallery_scene(name, 0).unwrap().function;
        for (label, threads) in pools() {
            group.bench_with_input(BenchmarkId::new(label, name), &f, |b, f| {
                b.iter(|| with_workers(threads, || black_box(algebraic_vertices(f))))
            });
        }
    }
    group.finish();
}

fn bench_arrangement(c: &mut Criterion) {
    let mut group = c.benchmark_group("arrangement");
    group.sample_size(10);
    let f = gallery_scene("random-1", 0).unwrap().function;
    let planes = f.hyperplanes().to_vec();
    for (label, threads) in pools() {
        group.bench_function(BenchmarkId::new(label, "random-1"), |b| {
            b.iter(|| with_workers(threads, || black_box(arrangement(&planes, 3))))
        });
    }
    group.finish();
}

fn bench_zero_test(c: &mut Criterion) {
    let mut group = c.benchmark_group("zero_test");
    let f = gallery_scene("cube", 0).unwrap().function;
    let t = transform_function(&f);
    for (label, threads) in pools() {
        for (method, test) in [
            ("expand", ZeroTest::Expand),
            ("grid", ZeroTest::Grid { offset: 0 }),
        ] {
            group.bench_function(BenchmarkId::new(label.clone(), method), |b| {
                b.iter(|| with_workers(threads, || black_box(is_zero_with(&t, test))))
            });
        }
    }
    group.finish();
}

fn bench_decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose_simplices");
    group.sample_size(10);
    let f = gallery_scene("schonhardt", 0).unwrap().function;
    for (label, threads) in pools() {
        group.bench_function(BenchmarkId::new(label, "schonhardt"), |b| {
            b.iter(|| with_workers(threads, || black_box(decompose_simplices(&f).unwrap())))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_vertices,
    bench_arrangement,
    bench_zero_test,
    bench_decomposition
);
criterion_main!(benches);
