//! Parallel vs single-worker timings for the main engines.
//!
//! `jobs = 1` pins rayon to one thread; `jobs = 0` uses the default pool.
//! Built with `--no-default-features`, both rows run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;

use shrubs::av321::{self, MinimalPolynomial};
use shrubs::forest::Enumerator;
use shrubs::par;
use shrubs::paths::{count_paths, GenerateOptions};
use shrubs::{StepAlphabet, WedgeBound};

const JOBS: [(&str, usize); 2] = [("sequential", 1), ("parallel", 0)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for (name, jobs) in JOBS {
        for (pattern, n) in [("321", 4usize), ("231,321", 5)] {
            let e = Enumerator::new(2, n, Some(pattern.parse().unwrap())).unwrap();
            g.bench_with_input(BenchmarkId::new(name, format!("{pattern} n={n}")), &e, |b, e| {
                b.iter(|| par::with_jobs(jobs, || e.count().unwrap()))
            });
        }
    }
    g.finish();
}

fn paths(c: &mut Criterion) {
    let mut g = c.benchmark_group("paths");
    g.sample_size(10);
    let alphabet = StepAlphabet::east_north();
    let bound = WedgeBound::below_line(2, 3).unwrap();
    for (name, jobs) in JOBS {
        g.bench_function(BenchmarkId::new(name, "duchon n=5"), |b| {
            b.iter(|| par::with_jobs(jobs, || count_paths(&alphabet, bound, (15, 10), GenerateOptions::default()).unwrap()))
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("av321");
    g.sample_size(10);
    let terms: Vec<BigUint> = av321::series(201).unwrap();
    let poly = MinimalPolynomial::bundled();
    let wide: Vec<BigUint> = (0..4000u64).map(|i| BigUint::from(i).pow(40)).collect();
    for (name, jobs) in JOBS {
        g.bench_function(BenchmarkId::new(name, "series 400"), |b| {
            b.iter(|| par::with_jobs(jobs, || av321::series(400).unwrap()))
        });
        g.bench_function(BenchmarkId::new(name, "suffix sums 4000"), |b| {
            b.iter(|| par::with_jobs(jobs, || av321::suffix_sums(&wide)))
        });
        g.bench_function(BenchmarkId::new(name, "verify order 200"), |b| {
            b.iter(|| par::with_jobs(jobs, || av321::verify_min_poly(&poly, &terms, 200).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, paths, series);
criterion_main!(benches);
