use criterion::{criterion_group, criterion_main, Criterion};

use commplex::complex::named;
use commplex::decide::csp::{solve, CanonicalCsp, SolveLimits, DEFAULT_MAX_TUPLES};
use commplex::decide::{decide_generates, minimal_complexes, DecideOptions, MinimalOptions};
use commplex::enumerate::enumerate_complexes;
use commplex::{families, Graph};

fn search(c: &mut Criterion) {
    let l = families::eq(4, 3).unwrap();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for (name, k) in [("eq4-tree-02-03-13", named::fig2()), ("eq4-tree-02-12-13", named::fig4())] {
        g.bench_function(format!("build+solve {name}"), |b| {
            b.iter(|| {
                let csp = CanonicalCsp::build(&l, &k, DEFAULT_MAX_TUPLES).unwrap();
                solve(&csp, SolveLimits::default())
            })
        });
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let ev = families::ev(4).unwrap();
    let path = Graph::path(4).to_complex();
    c.bench_function("decide ev(4) on a path", |b| {
        b.iter(|| decide_generates(&ev, &path, &DecideOptions::default()).unwrap())
    });
    let unique = families::unique(4).unwrap();
    c.bench_function("minimal unique(4)", |b| {
        b.iter(|| minimal_complexes(&unique, &MinimalOptions::default()).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    g.bench_function("complexes n=4", |b| b.iter(|| enumerate_complexes(4).unwrap()));
    g.bench_function("complexes n=5", |b| b.iter(|| enumerate_complexes(5).unwrap()));
    g.finish();
}

criterion_group!(benches, search, pipeline, enumeration);
criterion_main!(benches);
