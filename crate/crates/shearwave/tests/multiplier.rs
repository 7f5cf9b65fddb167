use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shearwave::multiplier::*;
use shearwave::*;
use std::f64::consts::{E, PI};

fn field(seed: u64) -> ModeField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ModeField::random_band_limited(&YGrid::new(20.0, 4001).unwrap(), &mut rng, 2.0, 2.0)
}

#[test]
fn multiplier_is_bounded_by_envelope() {
    for (k, t, nu) in [(1.0, 0.0, 1e-3), (-2.0, 7.0, 1e-4), (5.0, 100.0, 1e-5)] {
        let s = MultiplierSpec::new(k, t, nu);
        let env = (s.c0 * nu.cbrt() * t).exp() * (E + k.abs()).ln();
        assert!((s.envelope() - env).abs() < 1e-14 * env);
        for i in -200..=200 {
            let eta = 0.5 * i as f64 + k * t;
            let a = eval_a(&s, eta);
            assert!(a >= env && a <= (2.0 * PI + 1.0) * env, "A={a} env={env}");
        }
    }
}

#[test]
fn a_ring_monotone_in_eta_by_sign_of_k() {
    let up = MultiplierSpec::new(2.0, 3.0, 1e-3);
    let down = MultiplierSpec::new(-2.0, 3.0, 1e-3);
    let etas: Vec<f64> = (-300..300).map(|i| 0.1 * i as f64).collect();
    for w in etas.windows(2) {
        assert!(eval_a_ring(&up, w[1]) > eval_a_ring(&up, w[0]));
        assert!(eval_a_ring(&down, w[1]) < eval_a_ring(&down, w[0]));
    }
}

#[test]
fn time_derivative_matches_finite_difference() {
    let dt = 1e-5;
    for (k, eta) in [(1.0, 0.0), (1.0, 4.0), (3.0, 10.0), (0.5, -2.0)] {
        let s = MultiplierSpec::new(k, 2.0, 1e-3);
        let fd = (eval_a_ring(&MultiplierSpec { t: s.t + dt, ..s }, eta) - eval_a_ring(&MultiplierSpec { t: s.t - dt, ..s }, eta)) / (2.0 * dt);
        let d = da_ring_dt(&s, eta);
        assert!(d <= 0.0);
        assert!((fd - d).abs() < 1e-7, "{fd} vs {d}");
    }
}

#[test]
fn symbols_compose_a_ring() {
    let s = MultiplierSpec::new(1.5, 2.0, 1e-4);
    for eta in [-5.0, 0.0, 3.0, 40.0] {
        let sum = arctan_symbol(&s, ArctanKind::Plain, eta) + arctan_symbol(&s, ArctanKind::Viscous, eta) + PI + 1.0;
        assert!((sum - eval_a_ring(&s, eta)).abs() < 1e-14);
    }
}

#[test]
fn fourier_application_of_constant_symbol_is_identity() {
    let f = field(3);
    let a = apply_symbol(&f, |_| 2.5);
    assert!(a.warning.is_none(), "{:?}", a.warning);
    assert!(a.field.sub(&f.scale(Complex64::new(2.5, 0.0))).norm() < 1e-10 * f.norm());
}

#[test]
fn taper_warning_on_data_touching_the_edge() {
    let g = YGrid::new(5.0, 501).unwrap();
    let f = ModeField::from_real(&g, |y| (-0.01 * y * y).exp());
    let a = apply_a_fourier(&MultiplierSpec::new(1.0, 0.0, 1e-3), &f);
    assert!(a.taper_residual > 1e-6);
    assert!(a.warning.is_some());
}

#[test]
fn kernel_and_fourier_agree() {
    for (seed, (k, t, nu)) in [(1.0, 0.0, 1e-3), (-1.0, 4.0, 1e-3), (2.0, 2.0, 1e-5)].into_iter().enumerate() {
        let s = MultiplierSpec::new(k, t, nu);
        let f = field(seed as u64 + 10);
        for which in [ArctanKind::Plain, ArctanKind::Viscous] {
            let four = apply_arctan_fourier(&s, which, &f).field;
            let phys = apply_arctan_kernel_physical(&s, &f, which);
            let err = phys.sub(&four).norm() / four.norm();
            assert!(err <= 1e-3, "k={k} t={t} {which:?}: {err}");
        }
    }
}

#[test]
fn a_application_is_linear() {
    let s = MultiplierSpec::new(1.0, 1.0, 1e-3);
    let (f, g) = (field(1), field(2));
    let c = Complex64::new(-0.3, 2.0);
    let lhs = apply_a_fourier(&s, &f.scale(c).add(&g)).field;
    let rhs = apply_a_fourier(&s, &f).field.scale(c).add(&apply_a_fourier(&s, &g).field);
    assert!(lhs.sub(&rhs).norm() < 1e-12 * rhs.norm());
}

#[test]
fn commutator_vanishes_for_couette() {
    let p = make_profile(ProfileSpec::Couette, YGrid::standard(), 1e-3).unwrap();
    let (c, ratio) = commutator_b_a(&MultiplierSpec::new(1.0, 2.0, 1e-3), &p, &field(4));
    assert_eq!(ratio, 0.0);
    assert!(c.values.iter().all(|z| z.norm() == 0.0));
}

#[test]
fn commutator_matches_fourier_difference() {
    let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 1e-3).unwrap();
    let s = MultiplierSpec::new(1.0, 1.5, 1e-3);
    let f = field(5);
    let h = f.spacing;
    let a2: Vec<f64> = slope_on_v(&p, &f).iter().map(|a| a * a).collect();
    let dv = quad::deriv(&f.values, h);
    let g = ModeField::new(f.start, h, dv.iter().zip(&f.values).map(|(d, z)| d - Complex64::new(0.0, s.k * s.t) * z).collect());
    let mul = |x: &ModeField| ModeField::new(x.start, h, x.values.iter().zip(&a2).map(|(z, a)| z * *a).collect());
    let both = |x: &ModeField| {
        let p = apply_symbol_untapered(x, |eta| arctan_symbol(&s, ArctanKind::Plain, eta));
        let v = apply_symbol_untapered(x, |eta| arctan_symbol(&s, ArctanKind::Viscous, eta));
        p.add(&v)
    };
    let oracle = mul(&both(&g)).sub(&both(&mul(&g)));
    let (c, ratio) = commutator_b_a(&s, &p, &f);
    let err = c.sub(&oracle).norm() / oracle.norm();
    assert!(err < 1e-2, "{err}");
    assert!((ratio - c.norm() / f.norm()).abs() < 1e-12 * ratio);
}

#[test]
fn commutator_ratio_stable_across_viscosity() {
    let f = field(6);
    let r: Vec<f64> = [1e-3, 1e-4]
        .iter()
        .map(|&nu| {
            let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), nu).unwrap();
            commutator_b_a(&MultiplierSpec::new(1.0, 3.0, nu), &p, &f).1
        })
        .collect();
    assert!(r.iter().all(|v| v.is_finite() && *v > 0.0));
    assert!(r[0] / r[1] < 3.0 && r[1] / r[0] < 3.0, "{r:?}");
}
