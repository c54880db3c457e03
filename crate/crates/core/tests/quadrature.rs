use sextuple_core::exec::Execution;
use sextuple_core::quad::{integrate_6d_qmc, integrate_6d_tensor, Integrand6D, QmcSpec};
use sextuple_core::ParameterSet;

#[test]
fn qmc_brackets_tensor_in_seeded_replications() {
    let f = Integrand6D::new(ParameterSet::default()).unwrap();
    let tensor = integrate_6d_tensor(&f, &f.tensor_rules(4, 12).unwrap(), Execution::Parallel).unwrap();
    assert!((tensor.re - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-8);
    let covered = (0..100u64)
        .filter(|&seed| {
            let q = integrate_6d_qmc(&f, &QmcSpec::new(1 << 12, seed).unwrap(), Execution::Parallel).unwrap();
            (q.value - tensor).norm() <= 3.0 * q.stderr
        })
        .count();
    assert!(covered >= 95, "covered {covered} of 100");
}

#[test]
fn harmonic_integrand_is_complex_and_nonsingular() {
    // a = -2, k = -1: the log argument is negative real, never zero
    let ps = ParameterSet::default().with_k(-1.0).with_a(sextuple_core::c64(-2.0, 0.0));
    let f = Integrand6D::new(ps).unwrap();
    let q = integrate_6d_qmc(&f, &QmcSpec::new(1 << 18, 5).unwrap(), Execution::Parallel).unwrap();
    let want = sextuple_core::c64(0.140_550_462_854_873_2, -1.071_781_984_999_231_9);
    assert!((q.value - want).norm() <= 3.0 * q.stderr, "{:?}", q.value);
    assert!(q.value.im.abs() > 1.0);
}
