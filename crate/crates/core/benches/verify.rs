use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use horn_kernel::catalog::{catalog, Family};
use horn_kernel::harness::{run, SamplePlan, TolerancePolicy};
use horn_kernel::parallel::Execution;
use horn_kernel::series::SeriesConfig;

fn verify(c: &mut Criterion) {
    let cfg = SeriesConfig::default();
    let tol = TolerancePolicy::default();
    let plan = SamplePlan {
        n_samples: 8,
        ..SamplePlan::default()
    };
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for family in [Family::Contig, Family::Rec, Family::DiffDeriv, Family::Sum] {
        let records: Vec<_> = catalog().into_iter().filter(|r| r.family == family).collect();
        for (label, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(
                BenchmarkId::new(label, family.as_str()),
                &records,
                |b, records| b.iter(|| run(records, &plan, &tol, &cfg, exec).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, verify);
criterion_main!(benches);
