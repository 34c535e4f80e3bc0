mod common;

use dqfi::amplitude::{xi_analytic, xi_trace, xi_volterra};
use dqfi::{ModelParams, TimeGrid};
use proptest::prelude::*;

proptest! {
    #[test]
    fn amplitude_stays_in_unit_disk(p in common::params(), t in 0.0f64..200.0) {
        let xi = xi_analytic(&p, t);
        prop_assert!(xi.re.is_finite() && xi.im.is_finite());
        prop_assert!(xi.norm() <= 1.0 + 1e-12, "|xi| = {}", xi.norm());
    }

    #[test]
    fn amplitude_is_continuous(p in common::params(), t in 0.0f64..50.0) {
        let (a, b) = (xi_analytic(&p, t), xi_analytic(&p, t + 1e-9));
        prop_assert!((a - b).norm() < 1e-6);
    }

    #[test]
    fn trace_is_pointwise(p in common::params()) {
        let grid = TimeGrid::uniform(20.0, 41).unwrap();
        let tr = xi_trace(&p, &grid);
        for (&t, &xi) in grid.times().iter().zip(&tr.values) {
            prop_assert_eq!(xi, xi_analytic(&p, t));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ode_embedding_agrees_with_closed_form(
        lambda in 0.05f64..10.0,
        omega in 0.0f64..5.0,
        delta in 0.0f64..3.0,
        cavity in -2.0f64..2.0,
    ) {
        let p = ModelParams::new(lambda, omega, delta, cavity).unwrap();
        let grid = TimeGrid::uniform(20.0, 401).unwrap();
        let ode = xi_volterra(&p, &grid).unwrap();
        prop_assert!(ode.sup_distance(&xi_trace(&p, &grid)) < 1e-6);
    }
}
