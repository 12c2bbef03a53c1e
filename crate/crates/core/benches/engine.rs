use beauville_core::catalog;
use beauville_core::engine::{classify, search, ClassifyOptions, SearchStrategy};
use beauville_core::{Bounds, Exec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bounds(exec: Exec) -> Bounds {
    Bounds {
        exec,
        ..Bounds::default()
    }
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for spec in ["C(7,7)", "H(5,1,1)", "perm(7){(1,2,3,4,5,6,7),(2,3)(4,7)}"] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let g = catalog::group(spec, bounds(exec)).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), spec), &g, |b, g| {
                b.iter(|| classify(g, &ClassifyOptions::default()).unwrap())
            });
        }
    }
    group.finish();
}

fn searching(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for spec in ["M11", "L2(8)"] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let g = catalog::group(spec, bounds(exec)).unwrap();
            let strategy = SearchStrategy::Random { seed: 3 };
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), spec), &g, |b, g| {
                b.iter(|| search(g, &strategy, 300, 100).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, classification, searching);
criterion_main!(benches);
