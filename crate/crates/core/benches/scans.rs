use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use heegner_core::moments::scan::{average_scan, ld_scan, remainder_scan, spread_discriminants};
use heegner_core::moments::AverageIntegrand;
use heegner_core::par::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn remainder(c: &mut Criterion) {
    let s = Complex64::new(0.5, 2.0);
    let mut g = c.benchmark_group("remainder_scan_-3000_-1000");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| remainder_scan(-3000, -1000, s, exec).unwrap())
        });
    }
    g.finish();
}

fn average(c: &mut Criterion) {
    let ds = spread_discriminants(-50_000, -10_000, 40);
    let mut g = c.benchmark_group("average_scan_log_eta4_40");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| average_scan(&ds, AverageIntegrand::LogEta4, exec).unwrap())
        });
    }
    g.finish();
}

fn ld(c: &mut Criterion) {
    let mut g = c.benchmark_group("ld_scan_-20000_-1000");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| ld_scan(-20_000, -1000, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, remainder, average, ld);
criterion_main!(benches);
