//! Rayon pool against a single worker on the data-parallel hot paths.
//! Building with `--no-default-features` makes both arms sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use peffect::corpus::Corpus;
use peffect::families::build_family;
use peffect::qdp::p_prime_involves_qdp;
use peffect::verify::{run_verify_all, VerifyFlags};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
    ]
}

fn sweep(c: &mut Criterion) {
    let corpus = Corpus::default_corpus();
    let mut group = c.benchmark_group("verify_default_corpus");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| run_verify_all(&corpus, VerifyFlags::default())))
        });
    }
    group.finish();
}

fn involvement(c: &mut Criterion) {
    let g = build_family("direct_product(qd(3), cyclic(2))").unwrap();
    let mut group = c.benchmark_group("qd3_involvement_search");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| p_prime_involves_qdp(&g, 3).unwrap().is_some()))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, involvement);
criterion_main!(benches);
