use proptest::prelude::*;

use sextuple_core::engine::{
    lhs_jet, lhs_moment_estimate, product_identity_check, rhs_theorem, verify, CaseTag,
    IdentityCase, PathKind, VerifyOptions,
};
use sextuple_core::exec::Execution;
use sextuple_core::lerch::{lerch_phi, LerchArgs};
use sextuple_core::params::{format_complex, parse_complex, validate_parameters};
use sextuple_core::specialfn::cpow;
use sextuple_core::{c64, ParameterSet};

// Drawn as margins from the binding strip constraints (v, nu > m;
// beta_z > -1; beta_p > -1, mu < 1) so that nearly every sample is valid,
// including ones close to the boundary.
prop_compose! {
    fn valid_params()(
        k in 0u32..=6,
        a in 0.3f64..3.0,
        m in 0.1f64..0.9,
        dv in 0.01f64..1.5,
        du in 0.01f64..1.5,
        dnu in 0.01f64..1.5,
        dmu in 0.01f64..1.5,
    ) -> ParameterSet {
        let (v, nu) = (m + dv, m + dnu);
        let u = m + 1.0 - v - du;
        let mu = (2.0 - m - nu).min(1.0) - dmu;
        ParameterSet::real(k as f64, a, m, u, v, mu, nu)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jet_matches_lerch(ps in valid_params()) {
        prop_assume!(validate_parameters(&ps).is_valid());
        let jet = lhs_jet(&ps).unwrap();
        let rhs = rhs_theorem(&ps).unwrap();
        prop_assert!((jet - rhs.value).norm() <= 1e-9 * (1.0 + rhs.value.norm()) + rhs.err,
            "{ps:?}: {jet} vs {}", rhs.value);
    }

    #[test]
    fn moments_match_jet(ps in valid_params()) {
        prop_assume!(validate_parameters(&ps).is_valid());
        let jet = lhs_jet(&ps).unwrap();
        // the uncollapsed product cancels near the strip boundary; its
        // rounding estimate must cover that
        let moment = lhs_moment_estimate(&ps).unwrap();
        prop_assert!((jet - moment.value).norm() <= 1e-9 * (1.0 + jet.norm()) + moment.err,
            "{ps:?}: {jet} vs {moment:?}");
    }

    #[test]
    fn degenerate_consistency(ps in valid_params()) {
        let ps = ps.with_k(0.0);
        prop_assume!(validate_parameters(&ps).is_valid());
        let (_, csc) = product_identity_check(&ps).unwrap();
        let rhs = rhs_theorem(&ps).unwrap().value;
        prop_assert!((rhs - csc).norm() <= 1e-12 * csc.norm(), "{rhs} vs {csc}");
    }

    #[test]
    fn csc_symmetry(m in 0.05f64..0.95) {
        let a = product_identity_check(&ParameterSet::real(0.0, 1.0, m, 0.0, 1.0, 0.0, 1.0)).unwrap().1;
        let b = product_identity_check(&ParameterSet::real(0.0, 1.0, 1.0 - m, 0.0, 1.0, 0.0, 1.0)).unwrap().1;
        prop_assert!((a - b).norm() <= 1e-13 * a.norm());
    }

    #[test]
    fn lerch_shift_recurrence(r in 0.0f64..0.95, t in -3.1f64..3.1, s in 0.2f64..3.0, v in 0.2f64..3.0) {
        let z = c64(r * t.cos(), r * t.sin());
        let (s, v) = (c64(s, 0.0), c64(v, 0.0));
        let lhs = lerch_phi(LerchArgs::new(z, s, v)).unwrap();
        let rhs = cpow(v, -s) + z * lerch_phi(LerchArgs::new(z, s, v + 1.0)).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm().max(1.0));
    }

    #[test]
    fn complex_literals_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let z = c64(re, im);
        prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }
}

#[test]
fn reports_do_not_depend_on_execution_mode() {
    let case = IdentityCase::new(CaseTag::Theorem);
    let ps = ParameterSet::default().with_k(1.0);
    let opts = |exec| VerifyOptions {
        paths: Some(vec![PathKind::Qmc, PathKind::Tensor, PathKind::Closed]),
        qmc_count: 1 << 14,
        tensor_level: 3,
        tensor_nodes: 8,
        exec,
        ..Default::default()
    };
    let seq = verify(&case, &ps, &opts(Execution::Sequential)).to_json().to_string();
    let par = verify(&case, &ps, &opts(Execution::Parallel)).to_json().to_string();
    assert_eq!(seq, par);
}

#[test]
fn qmc_seed_changes_only_the_noise() {
    let case = IdentityCase::new(CaseTag::HarmonicLimit);
    let ps = case.default_params();
    let run = |seed| {
        let opts = VerifyOptions {
            paths: Some(vec![PathKind::Qmc, PathKind::Special]),
            qmc_count: 1 << 16,
            seed,
            ..Default::default()
        };
        verify(&case, &ps, &opts)
    };
    let (a, b) = (run(1), run(2));
    let (va, vb) = (a.value_of(PathKind::Qmc).unwrap(), b.value_of(PathKind::Qmc).unwrap());
    assert_ne!(va.value, vb.value);
    assert!((va.value - vb.value).norm() <= 5.0 * (va.err + vb.err));
    assert_eq!(run(1).to_json(), a.to_json());
}
