use horn_kernel::pochhammer::{
    gamma_ln, log_pochhammer, pochhammer, pochhammer_mixed, pochhammer_via_gamma, PochArg, POLE_EPS,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn off_integer(mu: f64) -> bool {
    (mu - mu.round()).abs() > 1e-3
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 512,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn recurrence(mu in -8.0f64..8.0, k in 0i64..50) {
        let a = pochhammer(mu, k + 1).unwrap();
        let b = (mu + k as f64) * pochhammer(mu, k).unwrap();
        prop_assert!(rel(a, b) <= 1e-12 || (a == 0.0 && b == 0.0), "{a} vs {b}");
    }

    #[test]
    fn splitting(mu in -8.0f64..8.0, n in 0i64..30, k in 0i64..30) {
        let a = pochhammer(mu, n + k).unwrap();
        let b = pochhammer(mu, n).unwrap() * pochhammer(mu + n as f64, k).unwrap();
        prop_assert!(rel(a, b) <= 1e-12 || (a == 0.0 && b == 0.0), "{a} vs {b}");
    }

    #[test]
    fn negative_index(mu in -8.0f64..8.0, k in 0i64..30) {
        prop_assume!(off_integer(mu));
        let p = pochhammer(mu, -k).unwrap() * pochhammer(1.0 - mu, k).unwrap();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(rel(p, sign) <= 1e-12, "{p}");
    }

    #[test]
    fn mixed_matches_signed_index(nu in -6.0f64..6.0, m in 0u64..25, n in 0u64..25) {
        prop_assume!(off_integer(nu));
        let a = pochhammer_mixed(nu, m, n).unwrap();
        let b = pochhammer(nu, m as i64 - n as i64).unwrap();
        prop_assert!(rel(a, b) <= 1e-12, "{a} vs {b}");
    }

    #[test]
    fn log_form_agrees(mu in -8.0f64..8.0, k in 0u64..60) {
        let direct = pochhammer(mu, k as i64).unwrap();
        let l = log_pochhammer(mu, k).unwrap();
        let v = l.value();
        if direct == 0.0 {
            prop_assert_eq!(v, 0.0);
        } else {
            prop_assert!(rel(direct, v) <= 1e-11, "{direct} vs {v}");
            prop_assert_eq!(direct.signum(), v.signum());
        }
    }

    #[test]
    fn gamma_ratio_cross_check(mu in 0.05f64..10.0, k in 0u64..40) {
        let a = pochhammer(mu, k as i64).unwrap();
        let b = pochhammer_via_gamma(mu, k).unwrap();
        prop_assert!(rel(a, b) <= 1e-11, "{a} vs {b}");
    }
}

#[test]
fn spec_values() {
    assert_eq!(pochhammer(2.0, 3).unwrap(), 24.0);
    assert_eq!(pochhammer(-2.0, 3).unwrap(), 0.0);
    assert_eq!(pochhammer(3.0, 0).unwrap(), 1.0);
    assert_eq!(PochArg::new(0.5, 2).eval().unwrap(), 0.75);
    let l = log_pochhammer(-1.5, 2).unwrap();
    assert_eq!(l.value().signum(), 1.0);
    assert!((l.value() - 0.75).abs() < 1e-15);
    assert!(gamma_ln(1.0).unwrap().abs() < 1e-15);
    assert!(rel(gamma_ln(5.0).unwrap(), 24f64.ln()) < 1e-13);
    assert!(rel(gamma_ln(0.5).unwrap(), std::f64::consts::PI.sqrt().ln()) < 1e-13);
    assert!(gamma_ln(0.0).is_err());
}

#[test]
fn poles_of_negative_index() {
    assert!(pochhammer(2.0, -3).is_err());
    assert!(pochhammer(2.0 + 0.5 * POLE_EPS, -3).is_err());
    assert!(pochhammer(2.5, -3).is_ok());
}
