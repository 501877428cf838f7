//! Parallel vs sequential throughput of the data-parallel cores: the
//! majorant coefficient table, grid certification, the majorant grid scan,
//! and a batch of inequality checks.
//!
//! With the default `parallel` feature each workload runs twice, once
//! pinned to a single rayon thread and once on the default pool; without
//! the feature only the sequential path exists.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use conjugate_sharp::families::{self, FamilyKind, FamilySpec};
use conjugate_sharp::halfstrip::MajorantSeries;
use conjugate_sharp::inequality::check_minimum_inequality;
use conjugate_sharp::trigpoly::{certified_sup_abs, default_grid};

#[cfg(feature = "parallel")]
fn pools() -> (rayon::ThreadPool, rayon::ThreadPool) {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let full = rayon::ThreadPoolBuilder::new().build().unwrap();
    (single, full)
}

fn bench_both<F: Fn() + Sync>(c: &mut Criterion, name: &str, f: F) {
    #[cfg(feature = "parallel")]
    {
        let (single, full) = pools();
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        group.bench_function("seq", |b| b.iter(|| single.install(&f)));
        group.bench_function("par", |b| b.iter(|| full.install(&f)));
        group.finish();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        group.bench_function("seq", |b| b.iter(&f));
        group.finish();
    }
}

fn coeff_table(c: &mut Criterion) {
    bench_both(c, "coeff_table_j2000", || {
        black_box(MajorantSeries::build(1.5, 2000).unwrap());
    });
}

fn grid_certification(c: &mut Criterion) {
    let poly = families::flat_polynomial(2048);
    let conj = poly.imag_part();
    bench_both(c, "certified_sup_n2048_k32768", || {
        black_box(certified_sup_abs(&conj, 32_768).unwrap());
    });
}

fn majorant_grid(c: &mut Criterion) {
    let series = MajorantSeries::build(2.0, 600).unwrap();
    bench_both(c, "majorant_certificate_200x200", || {
        let cert =
            conjugate_sharp::halfstrip::majorant_certificate(&series, 0.02, 4.0, 200, 200, 1e-9)
                .unwrap();
        black_box(cert.worst_margin);
    });
}

fn batch_checks(c: &mut Criterion) {
    let polys: Vec<_> = (0..32)
        .map(|i| {
            families::random_family(&FamilySpec {
                kind: FamilyKind::RandomPhase,
                size: 24,
                seed: 1000 + i,
                frequency_set: None,
                frequency_cap: None,
            })
            .unwrap()
        })
        .collect();
    bench_both(c, "minimum_inequality_batch32", || {
        for p in &polys {
            let k = default_grid(p.max_frequency());
            black_box(check_minimum_inequality(p, 2.0, k).unwrap());
        }
    });
}

criterion_group!(
    benches,
    coeff_table,
    grid_certification,
    majorant_grid,
    batch_checks
);
criterion_main!(benches);
