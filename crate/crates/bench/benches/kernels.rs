use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dirspace::dirichlet::DirichletPolynomial;
use dirspace::plancherel::time_average;
use dirspace::rkhs::{multiplier_norm_estimate, SpaceHandle};
use dirspace::specialfn::{zeta_complex, zeta_euler_maclaurin};
use dirspace::weights::{HalfLineMeasure, WeightSequence};
use dirspace::{Complex64, ComplexPoint};

fn zeta(c: &mut Criterion) {
    let s = Complex64::new(1.5, 40.0);
    c.bench_function("zeta_alternating", |b| b.iter(|| zeta_complex(black_box(s)).unwrap()));
    c.bench_function("zeta_euler_maclaurin", |b| b.iter(|| zeta_euler_maclaurin(black_box(s)).unwrap()));
}

fn kernel_matrix(c: &mut Criterion) {
    let nodes: Vec<ComplexPoint> =
        (0..16).map(|i| ComplexPoint::new(1.2 + 0.05 * i as f64, 3.0 * i as f64).unwrap()).collect();
    let log_power = SpaceHandle::new(WeightSequence::log_power(1.0)).with_kernel_truncation(10_000).unwrap();
    let pick = SpaceHandle::new(WeightSequence::PickReciprocal);
    c.bench_function("kernel_matrix_log_power_16", |b| b.iter(|| log_power.kernel_matrix(black_box(&nodes)).unwrap()));
    c.bench_function("kernel_matrix_pick_16", |b| b.iter(|| pick.kernel_matrix(black_box(&nodes)).unwrap()));
}

fn multiplier(c: &mut Criterion) {
    let phi = DirichletPolynomial::new(1, [(1, Complex64::new(1.0, 0.0)), (2, Complex64::new(1.0, 0.0))]).unwrap();
    let space = SpaceHandle::new(WeightSequence::log_power(0.0)).with_n0(1).unwrap();
    let mut group = c.benchmark_group("multiplier_norm");
    group.sample_size(10);
    for trunc in [256u64, 4096] {
        group.bench_function(trunc.to_string(), |b| {
            b.iter(|| multiplier_norm_estimate(&phi, &space, black_box(trunc)).unwrap())
        });
    }
    group.finish();
}

fn plancherel(c: &mut Criterion) {
    let f = DirichletPolynomial::new(2, (2..=200u64).map(|n| (n, Complex64::new(1.0 / n as f64, 0.0)))).unwrap();
    let mu = HalfLineMeasure::mu_alpha(-1.0).unwrap();
    c.bench_function("time_average_200_terms", |b| b.iter(|| time_average(&f, &mu, black_box(1e3), 1e-2).unwrap()));
}

criterion_group!(benches, zeta, kernel_matrix, multiplier, plancherel);
criterion_main!(benches);
