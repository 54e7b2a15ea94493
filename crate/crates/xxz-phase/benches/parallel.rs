use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::f64::consts::PI;
use std::hint::black_box;
use xxz_phase::bethe_finite::{scan_interaction, ScaledExcitation};
use xxz_phase::ed_oracle::{sector_matrix, SpinSector};
use xxz_phase::edge_analysis::wiener_hopf_factorize_with;
use xxz_phase::scattering::{PhaseKind, PhaseShiftTable};
use xxz_phase::{Exec, ModelParams, QuadratureSpec};

const PATHS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn phase_table(c: &mut Criterion) {
    let p = ModelParams::new(PI / 3.0).unwrap();
    let q = QuadratureSpec::default();
    let mut g = c.benchmark_group("phase_table");
    g.sample_size(10);
    for (name, exec) in PATHS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| PhaseShiftTable::build(PhaseKind::ParticleHole, &p, &q, black_box(10.0), e).unwrap())
        });
    }
    g.finish();
}

fn ed_assembly(c: &mut Criterion) {
    let s = SpinSector::new(14, 7).unwrap();
    let mut g = c.benchmark_group("ed_assembly_L14");
    g.sample_size(10);
    for (name, exec) in PATHS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| sector_matrix(&s, black_box(0.5), e)));
    }
    g.finish();
}

fn length_scan(c: &mut Criterion) {
    let p = ModelParams::new(PI / 3.0).unwrap();
    let q = QuadratureSpec::default();
    let exc = ScaledExcitation::TwoHole { f1: 0.375, f2: 0.75 };
    let ls = [64, 96, 128, 192, 256, 384, 512];
    let mut g = c.benchmark_group("bethe_scan");
    g.sample_size(10);
    for (name, exec) in PATHS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| scan_interaction(black_box(&ls), &p, exc, &q, e).unwrap())
        });
    }
    g.finish();
}

fn factorization(c: &mut Criterion) {
    let p = ModelParams::new(PI / 3.0).unwrap();
    let q = QuadratureSpec::default();
    let mut g = c.benchmark_group("wiener_hopf");
    g.sample_size(10);
    for (name, exec) in PATHS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| wiener_hopf_factorize_with(black_box(&p), &q, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, phase_table, ed_assembly, length_scan, factorization);
criterion_main!(benches);
