//! Sequential vs parallel counting of wide subcategories.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use higher_auslander::classify::{count_wide_with, CountOptions};

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_wide");
    group.sample_size(10);
    for (n, d) in [(5u32, 2u32), (3, 4), (4, 3)] {
        for (label, jobs) in [("sequential", Some(1)), ("parallel", None)] {
            let opts = CountOptions { jobs, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(label, format!("{n},{d}")), &opts, |b, opts| {
                b.iter(|| count_wide_with(n, d, opts).unwrap().count)
            });
        }
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    use higher_auslander::linalg::PrimeField;
    use higher_auslander::verify::formula_grid;
    let field = PrimeField::new(32003).unwrap();
    let mut group = c.benchmark_group("formula_grid");
    group.sample_size(10);
    for (label, jobs) in [("sequential", Some(1)), ("parallel", None)] {
        group.bench_function(BenchmarkId::new(label, "4,2"), |b| {
            b.iter(|| higher_auslander::par::with_jobs(jobs, || formula_grid(4, 2, field).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, counting, verification);
criterion_main!(benches);
