use proptest::prelude::*;
use shearwave::harness::Config;
use shearwave::linear::ModeState;
use shearwave::multiplier::{eval_a, MultiplierSpec};
use shearwave::*;
use std::f64::consts::{E, PI};

proptest! {
    #[test]
    fn multiplier_stays_in_envelope(k in prop_oneof![-8.0..-0.5f64, 0.5..8.0f64], t in 0.0..200.0f64, lognu in -6.0..-2.0f64, eta in -500.0..500.0f64) {
        let s = MultiplierSpec::new(k, t, 10f64.powf(lognu));
        let env = (s.c0 * s.nu.cbrt() * t).exp() * (E + k.abs()).ln();
        let a = eval_a(&s, eta);
        prop_assert!(a >= env * (1.0 - 1e-12) && a <= (2.0 * PI + 1.0) * env * (1.0 + 1e-12));
    }

    #[test]
    fn poisson_solve_has_small_residual(k in 0.5..6.0f64, freq in 0.0..4.0f64, center in -3.0..3.0f64) {
        let g = YGrid::new(8.0, 801).unwrap();
        let w = ModeField::from_fn(&g, |y| Complex64::from_polar((-(y - center).powi(2)).exp(), freq * y));
        let s = ModeState::new(k, 1e-3, w).unwrap();
        prop_assert!(s.poisson_residual() <= 1e-8);
    }

    #[test]
    fn config_hash_ignores_order_and_spacing(entries in proptest::collection::btree_map("[a-z][a-z0-9_]{0,8}", "[a-z0-9.,]{1,10}", 1..8)) {
        let fwd: String = entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let rev: String = entries.iter().rev().map(|(k, v)| format!("  {k}={v}  # note\n")).collect();
        let a = Config::parse(&fwd).unwrap();
        let b = Config::parse(&rev).unwrap();
        prop_assert_eq!(a.hash(), b.hash());
        prop_assert_eq!(Config::parse(&a.canonical()).unwrap().hash(), a.hash());
    }

    #[test]
    fn heat_flow_preserves_slope_bounds(a in -0.4..2.0f64, s in 0.0..500.0f64) {
        let p = make_profile(ProfileSpec::GaussBump { a }, YGrid::new(10.0, 401).unwrap(), 1e-2).unwrap();
        let q = p.evolve_heat(s).unwrap();
        prop_assert!(q.b1_min() >= p.c_m - 1e-9 && q.b1_max() <= 1.0 / p.c_m + 1e-9);
    }
}
