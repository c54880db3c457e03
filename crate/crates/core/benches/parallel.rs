//! Sequential vs rayon execution of the heavy loops. Without the `parallel`
//! feature both arms run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sextuple_core::engine::{verify, CaseTag, IdentityCase, PathKind, VerifyOptions};
use sextuple_core::exec::{map_slice, Execution};
use sextuple_core::quad::{integrate_6d_qmc, integrate_6d_tensor, Integrand6D, QmcSpec};
use sextuple_core::ParameterSet;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn qmc(c: &mut Criterion) {
    let f = Integrand6D::new(ParameterSet::default().with_k(1.0)).unwrap();
    let spec = QmcSpec::new(1 << 16, 1).unwrap();
    let mut g = c.benchmark_group("qmc_2^16");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| integrate_6d_qmc(black_box(&f), &spec, exec).unwrap())
        });
    }
    g.finish();
}

fn tensor(c: &mut Criterion) {
    let f = Integrand6D::new(ParameterSet::default()).unwrap();
    let rules = f.tensor_rules(3, 8).unwrap();
    let mut g = c.benchmark_group("tensor_l3_n8");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| integrate_6d_tensor(black_box(&f), &rules, exec).unwrap())
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let case = IdentityCase::new(CaseTag::Theorem);
    let points: Vec<ParameterSet> = (0..=6)
        .flat_map(|k| [0.3, 0.5, 0.7].map(|m| ParameterSet::real(k as f64, 1.5, m, 0.0, 1.0, 0.0, 1.0)))
        .collect();
    let opts = VerifyOptions {
        paths: Some(vec![PathKind::Jet, PathKind::Moment, PathKind::Closed]),
        exec: Execution::Sequential,
        ..Default::default()
    };
    let mut g = c.benchmark_group("sweep_21_points");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| map_slice(exec, &points, |ps| verify(&case, ps, &opts)))
        });
    }
    g.finish();
}

criterion_group!(benches, qmc, tensor, sweep);
criterion_main!(benches);
