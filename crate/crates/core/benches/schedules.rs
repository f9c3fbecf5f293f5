//! Sequential vs parallel schedules on the data-parallel workloads, plus the
//! fast runs finder against the brute-force one.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use primrep::par::Schedule;
use primrep::verify::conjecture::{conjecture_maxruns_with, weight_floor};
use primrep::verify::corpus::{CorpusSpec, ExhaustiveSpec, FamilySpec, RandomSpec};
use primrep::verify::{check_words, DEFAULT_LAMBDAS};
use primrep::word::gen_family;
use primrep::{find_runs, find_runs_oracle, Family, GenerationFactor};

const SCHEDULES: [(&str, Schedule); 2] = [
    ("sequential", Schedule::Sequential),
    ("parallel", Schedule::Parallel),
];

fn verification(c: &mut Criterion) {
    let words = CorpusSpec {
        exhaustive: vec![ExhaustiveSpec {
            alphabet_size: 2,
            max_len: 10,
        }],
        families: vec![FamilySpec {
            family: Family::Wk,
            from: 1,
            to: 20,
        }],
        random: vec![RandomSpec {
            count: 50,
            length: 200,
            seed: 1,
        }],
    }
    .build()
    .unwrap();
    let mut group = c.benchmark_group("verify_corpus");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        group.bench_function(name, |b| {
            b.iter(|| {
                check_words(
                    schedule,
                    black_box(&words),
                    &DEFAULT_LAMBDAS,
                    GenerationFactor::DEFAULT,
                )
            })
        });
    }
    group.finish();
}

fn weight_floor_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("weight_floor_10000");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        group.bench_function(name, |b| {
            b.iter(|| weight_floor(schedule, black_box(10_000)))
        });
    }
    group.finish();
}

fn maxruns(c: &mut Criterion) {
    let mut group = c.benchmark_group("maxruns_binary_14");
    group.sample_size(10);
    for (name, schedule) in SCHEDULES {
        group.bench_function(name, |b| {
            b.iter(|| conjecture_maxruns_with(schedule, 2, black_box(14)).unwrap())
        });
    }
    group.finish();
}

fn runs_finders(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_runs");
    for n in [64i64, 256, 1024, 4096] {
        let w = gen_family(Family::Fibonacci, n).unwrap();
        group.bench_with_input(BenchmarkId::new("lyndon_lce", n), &w, |b, w| {
            b.iter(|| find_runs(black_box(w)))
        });
        group.bench_with_input(BenchmarkId::new("oracle", n), &w, |b, w| {
            b.iter(|| find_runs_oracle(black_box(w)))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    verification,
    weight_floor_sweep,
    maxruns,
    runs_finders
);
criterion_main!(benches);
