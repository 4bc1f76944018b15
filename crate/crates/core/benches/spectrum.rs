use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gme_core::concurrence::full_spectrum_with;
use gme_core::exec::Execution;
use gme_core::verify::{haar_random_state, run_check_with, CheckName, TrialConfig};

const MODES: [(&str, Execution); 2] = [
    ("serial", Execution::Serial),
    ("parallel", Execution::Parallel),
];

fn bench_full_spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_spectrum");
    group.sample_size(10);
    for n in [8usize, 12, 16] {
        let state = haar_random_state(&vec![2; n], 1).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &state, |b, s| {
                b.iter(|| full_spectrum_with(s, mode).unwrap());
            });
        }
    }
    group.finish();
}

fn bench_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_check");
    group.sample_size(10);
    let cases = [
        (CheckName::LuInvariance, vec![2, 2, 2, 2, 2]),
        (CheckName::OracleAgreement, vec![3, 3, 2, 2]),
    ];
    for (check, dims) in cases {
        let config = TrialConfig::new(dims, 100, 7);
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, check), &config, |b, cfg| {
                b.iter(|| run_check_with(check, cfg, mode).unwrap());
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_full_spectrum, bench_checks);
criterion_main!(benches);
