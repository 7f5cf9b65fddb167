use shearwave::linear::*;
use shearwave::multiplier::MultiplierSpec;
use shearwave::waveop::WaveOperatorContext;
use shearwave::*;
use std::f64::consts::E;

fn gaussian(g: &YGrid) -> ModeField {
    ModeField::from_real(g, |y| (-y * y).exp())
}

fn bump(grid: YGrid, nu: f64) -> ShearProfile {
    make_profile(ProfileSpec::GaussBump { a: 0.5 }, grid, nu).unwrap()
}

#[test]
fn poisson_residual_is_tiny() {
    let g = YGrid::new(8.0, 801).unwrap();
    let s = ModeState::new(2.0, 1e-3, ModeField::from_fn(&g, |y| Complex64::from_polar((-y * y).exp(), 3.0 * y))).unwrap();
    assert!(s.poisson_residual() <= 1e-8, "{}", s.poisson_residual());
    assert!(matches!(ModeState::new(0.0, 1e-3, gaussian(&g)), Err(Error::ZeroWavenumber)));
}

#[test]
fn couette_stepper_matches_exact_solution() {
    let p = make_profile(ProfileSpec::Couette, YGrid::standard(), 1e-2).unwrap();
    let w = gaussian(&p.grid);
    let mut s = ModeState::new(1.0, 1e-2, w.clone()).unwrap();
    for _ in 0..300 {
        s = step_linear_ns(&s, &p, 0.01).unwrap();
    }
    let exact = couette_exact(1.0, 1e-2, s.t, &w);
    assert!(s.omega.sub(&exact).norm() < 1e-3 * exact.norm());
}

#[test]
fn couette_enstrophy_is_non_increasing() {
    let p = make_profile(ProfileSpec::Couette, YGrid::new(10.0, 1001).unwrap(), 1e-3).unwrap();
    let mut s = ModeState::new(1.0, 1e-3, gaussian(&p.grid)).unwrap();
    let mut last = s.omega_norm();
    for _ in 0..200 {
        s = step_linear_ns(&s, &p, 0.02).unwrap();
        let n = s.omega_norm();
        assert!(n <= last * (1.0 + 1e-12));
        last = n;
    }
}

#[test]
fn cfl_violation_is_rejected() {
    let p = make_profile(ProfileSpec::Couette, YGrid::standard(), 1e-3).unwrap();
    let s = ModeState::new(1.0, 1e-3, gaussian(&p.grid)).unwrap();
    assert!(matches!(step_linear_ns(&s, &p, 0.1), Err(Error::Cfl(_))));
    assert!(matches!(step_linear_ns(&s, &p, -0.01), Err(Error::NegativeTime(_))));
}

#[test]
fn hlog_norm_matches_definition() {
    let g = YGrid::new(4.0, 401).unwrap();
    let f = gaussian(&g);
    let one = measure_hlog_norm([(1.0, &f)]);
    assert!((one - (E + 1.0).ln() * f.norm()).abs() < 1e-14);
    let z = ModeField::zeros(&g);
    assert_eq!(measure_hlog_norm([(1.0, &z)]), 0.0);
    let h = f.scale(Complex64::new(0.0, 2.0));
    let two = measure_hlog_norm([(1.0, &f), (2.0, &h)]);
    let hand = ((E + 1.0).ln().powi(2) * f.norm().powi(2) + (E + 2.0).ln().powi(2) * h.norm().powi(2)).sqrt();
    assert!((two - hand).abs() < 1e-14 * hand);
}

#[test]
fn moving_frame_norm_within_jacobian_band() {
    let p = bump(YGrid::new(8.0, 801).unwrap(), 1e-3);
    let ctx = WaveOperatorContext::new(&p, 1.0).unwrap();
    let s = ModeState::new(1.0, 1e-3, gaussian(&p.grid)).unwrap();
    let fr = to_moving_frame(&s, &ctx).unwrap();
    let d = ctx.apply_d(&s.omega).unwrap().norm();
    let q = fr.f.norm() / d;
    assert!(q >= p.c_m && q <= 1.0 / p.c_m, "ratio {q}");
}

#[test]
fn couette_frame_is_stationary_without_viscosity() {
    let p = make_profile(ProfileSpec::Couette, YGrid::new(10.0, 1001).unwrap(), 0.0).unwrap();
    let ctx = WaveOperatorContext::new(&p, 1.0).unwrap();
    let mut s = ModeState::new(1.0, 0.0, gaussian(&p.grid)).unwrap();
    let f0 = to_moving_frame(&s, &ctx).unwrap().f;
    for _ in 0..100 {
        s = step_linear_ns(&s, &p, 0.02).unwrap();
    }
    let f1 = to_moving_frame(&s, &ctx).unwrap().f;
    assert!(f1.sub(&f0).norm() < 1e-3 * f0.norm(), "{}", f1.sub(&f0).norm() / f0.norm());
}

#[test]
fn a_energy_bounds_follow_multiplier_bounds() {
    let p = bump(YGrid::new(8.0, 801).unwrap(), 1e-3);
    let ctx = WaveOperatorContext::new(&p, 1.0).unwrap();
    let s = ModeState::new(1.0, 1e-3, gaussian(&p.grid)).unwrap();
    let fr = to_moving_frame(&s, &ctx).unwrap();
    let spec = MultiplierSpec::new(1.0, 0.0, 1e-3);
    let (e, taper) = a_energy(&fr, &spec);
    let env = spec.envelope();
    let n2 = fr.f.norm().powi(2);
    assert!(taper < 1e-6);
    assert!(e >= 0.99 * env * env * n2 && e <= 1.01 * (2.0 * std::f64::consts::PI + 1.0).powi(2) * env * env * n2);
    assert!(a_dissipation(&fr, &spec) > 0.0);
}

#[test]
fn semigroup_series_are_finite_and_decay() {
    let p = bump(YGrid::new(8.0, 801).unwrap(), 1e-3);
    let run = run_semigroup(&gaussian(&p.grid), 1.0, 1e-3, &p, 10.0, &SemigroupOptions::new(0.01, 10)).unwrap();
    assert_eq!(run.t.len(), 11);
    assert_eq!(run.steps, 1000);
    for series in [&run.omega, &run.grad_omega, &run.ux2_sup, &run.half_dx_psi, &run.dxy_psi, &run.uy_sup] {
        assert!(series.iter().all(|v| v.is_finite()));
    }
    assert!(run.ux2_sup.last().unwrap() < &run.ux2_sup[0]);
    assert!(run.int_ux2_sq > 0.0 && run.int_dxy_sq > 0.0 && run.int_dx_omega > 0.0);
    let csv = run.to_csv();
    assert!(csv.starts_with("t,omega_l2,"));
    assert_eq!(csv.lines().count(), 12);
}

#[test]
fn semigroup_is_grid_converged() {
    let runs: Vec<SemigroupRun> = [801usize, 1601]
        .iter()
        .map(|&n| {
            let p = bump(YGrid::new(8.0, n).unwrap(), 1e-3);
            run_semigroup(&gaussian(&p.grid), 1.0, 1e-3, &p, 8.0, &SemigroupOptions::new(0.01, 8)).unwrap()
        })
        .collect();
    let rel = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs()).fold(0.0, f64::max);
    let (a, b) = (&runs[0], &runs[1]);
    for (x, y) in [(&a.omega, &b.omega), (&a.grad_omega, &b.grad_omega), (&a.ux2_sup, &b.ux2_sup), (&a.dxy_psi, &b.dxy_psi), (&a.uy_sup, &b.uy_sup)] {
        assert!(rel(x, y) < 0.01, "{}", rel(x, y));
    }
}

#[test]
fn decay_fit_recovers_exponential() {
    let t: Vec<f64> = (0..50).map(|i| i as f64 * 0.2).collect();
    let y: Vec<f64> = t.iter().map(|t| 3.0 * (-0.37 * t).exp()).collect();
    assert!((fit_decay_rate(&t, &y, 1.0, 9.0) - 0.37).abs() < 1e-12);
    assert!(fit_decay_rate(&t, &y, 100.0, 200.0).is_nan());
}

#[test]
fn semigroup_rejects_bad_input() {
    let p = bump(YGrid::new(8.0, 401).unwrap(), 1e-3);
    let g = gaussian(&p.grid);
    assert!(matches!(run_semigroup(&g, 0.0, 1e-3, &p, 1.0, &SemigroupOptions::new(0.01, 2)), Err(Error::ZeroWavenumber)));
    assert!(matches!(run_semigroup(&g, 1.0, 1e-3, &p, -1.0, &SemigroupOptions::new(0.01, 2)), Err(Error::NegativeTime(_))));
}
