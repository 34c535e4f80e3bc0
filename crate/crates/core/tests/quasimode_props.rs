use dqfi::quasimode::{classify_regime, effective_detuning, sudden_change_point, Regime};
use proptest::prelude::*;

proptest! {
    #[test]
    fn vanishes_only_at_sudden_change_point(o in 0.0f64..10.0, d in 0.0f64..10.0, c in -20.0f64..20.0) {
        let star = sudden_change_point(o, d);
        prop_assert!(star <= 0.0);
        prop_assert!(effective_detuning(o, d, star).abs() < 1e-12);
        // V shape with unit slopes around δ*
        prop_assert!((effective_detuning(o, d, c) - (c - star).abs()).abs() < 1e-12);
    }

    #[test]
    fn drive_strength_widens_positive_detuning(
        o1 in 0.0f64..10.0,
        o2 in 0.0f64..10.0,
        d in 0.0f64..10.0,
        c in 0.0f64..10.0,
    ) {
        let (lo, hi) = if o1 <= o2 { (o1, o2) } else { (o2, o1) };
        prop_assert!(effective_detuning(lo, d, c) <= effective_detuning(hi, d, c) + 1e-12);
    }

    #[test]
    fn drive_detuning_narrows_resonant_gap(o in 0.0f64..10.0, d1 in 0.0f64..10.0, d2 in 0.0f64..10.0) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(effective_detuning(o, hi, 0.0) <= effective_detuning(o, lo, 0.0) + 1e-12);
    }

    #[test]
    fn regime_boundary(lambda in 0.001f64..100.0) {
        let expected = if lambda < 2.0 { Regime::NonMarkovian } else { Regime::Markovian };
        prop_assert_eq!(classify_regime(1.0, lambda), expected);
    }
}
