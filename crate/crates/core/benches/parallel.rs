use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use umbra::associated;
use umbra::eulerian::descent_counts;
use umbra::exec::{map_with, Strategy};
use umbra::families::all_samples;

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn descent_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("descent_oracle");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(5));
    for n in [8, 9] {
        for (name, s) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| descent_counts(black_box(n), s).unwrap())
            });
        }
    }
    group.finish();
}

fn verify_all(c: &mut Criterion) {
    let fams = all_samples().unwrap();
    let mut group = c.benchmark_group("verify_all");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(10));
    for (name, s) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, 6), |b| {
            b.iter(|| {
                let reports = map_with(s, fams.clone(), |f| associated::full_report(&f, 6, 1));
                assert!(reports.iter().all(|r| r.passed()));
                reports
            })
        });
    }
    group.finish();
}

criterion_group!(benches, descent_oracle, verify_all);
criterion_main!(benches);
