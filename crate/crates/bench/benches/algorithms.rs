use criterion::{black_box, criterion_group, criterion_main, Criterion};

use gkz::circuits::enumerate_circuits;
use gkz::residue::toric_residue;
use gkz::weyl::verify_hypergeometric;
use gkz::{classify, detect_cayley, SearchLimits};
use gkz_bench::{certification_inputs, classification_corpus, residue_inputs};

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for (name, a) in classification_corpus() {
        group.bench_function(name, |b| b.iter(|| classify(black_box(&a), SearchLimits::default()).unwrap()));
    }
    group.finish();
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    for (name, a) in classification_corpus() {
        group.bench_function(format!("circuits/{name}"), |b| {
            b.iter(|| enumerate_circuits(black_box(&a), SearchLimits::default()).unwrap())
        });
        group.bench_function(format!("cayley/{name}"), |b| {
            b.iter(|| detect_cayley(black_box(&a), SearchLimits::default()).unwrap())
        });
    }
    group.finish();
}

fn certification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(20);
    for (name, a, f) in certification_inputs() {
        group.bench_function(name, |b| b.iter(|| verify_hypergeometric(&a, black_box(&f), 1_000_000).unwrap()));
    }
    group.finish();
}

fn residues(c: &mut Criterion) {
    let mut group = c.benchmark_group("residue");
    for (name, p) in residue_inputs() {
        group.bench_function(name, |b| b.iter(|| toric_residue(black_box(&p)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, classification, searches, certification, residues);
criterion_main!(benches);
