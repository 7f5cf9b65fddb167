use shearwave::*;

fn bump(a: f64, nu: f64) -> ShearProfile {
    make_profile(ProfileSpec::GaussBump { a }, YGrid::standard(), nu).unwrap()
}

fn l1(v: &[f64], h: f64) -> f64 {
    shearwave::quad::trapz(&v.iter().map(|x| x.abs()).collect::<Vec<_>>(), h)
}

#[test]
fn gauss_bump_derivatives_are_consistent() {
    let p = bump(1.0, 0.0);
    let h = p.grid.h;
    let d1 = shearwave::quad::deriv(&p.b, h);
    let d2 = shearwave::quad::deriv(&p.b1, h);
    for i in 1..p.grid.n - 1 {
        assert!((d1[i] - p.b1[i]).abs() <= 10.0 * h * h);
        assert!((d2[i] - p.b2[i]).abs() <= 10.0 * h * h);
    }
    let c = p.grid.center();
    assert_eq!(p.b[c], 0.0);
    assert!((p.b1[0] - 1.0).abs() < 1e-12);
    assert!((p.b1[p.grid.n - 1] - (1.0 + std::f64::consts::PI.sqrt())).abs() < 1e-12);
}

#[test]
fn heat_flow_matches_gaussian_closed_form() {
    let (a, nu, s) = (1.0, 1e-2, 30.0);
    let p = bump(a, nu).evolve_heat(s).unwrap();
    let tau = nu * s;
    let w = 1.0 + 4.0 * tau;
    let mut worst = 0.0f64;
    for (i, y) in p.grid.points().iter().enumerate() {
        worst = worst.max((p.b2[i] - a / w.sqrt() * (-y * y / w).exp()).abs());
    }
    assert!(worst < 1e-8, "{worst}");
    assert_eq!(p.s, s);
}

#[test]
fn heat_flow_is_a_semigroup() {
    let p = bump(0.8, 1e-3);
    let once = p.evolve_heat(300.0).unwrap();
    let twice = p.evolve_heat(100.0).unwrap().evolve_heat(200.0).unwrap();
    let tol = 1e-8;
    for i in 0..p.grid.n {
        assert!((once.b[i] - twice.b[i]).abs() <= 10.0 * tol);
        assert!((once.b1[i] - twice.b1[i]).abs() <= 10.0 * tol);
        assert!((once.b2[i] - twice.b2[i]).abs() <= 10.0 * tol);
    }
}

#[test]
fn heat_flow_keeps_slope_bounds_and_shrinks_curvature() {
    for spec in [ProfileSpec::GaussBump { a: 1.5 }, ProfileSpec::TanhPerturbed { a: 0.5, w: 1.0 }] {
        let p = make_profile(spec, YGrid::standard(), 1e-2).unwrap();
        let cm = p.c_m;
        let mut last = l1(&p.b2, p.grid.h);
        for s in [1.0, 10.0, 50.0, 200.0] {
            let q = p.evolve_heat(s).unwrap();
            assert!(q.b1_min() >= cm - 1e-9 && q.b1_max() <= 1.0 / cm + 1e-9);
            let m = l1(&q.b2, q.grid.h);
            assert!(m <= last + 1e-9, "L1 grew: {m} > {last}");
            last = m;
        }
    }
}

#[test]
fn single_signed_curvature_keeps_its_mass() {
    let p = bump(1.0, 1e-2);
    let q = p.evolve_heat(20.0).unwrap();
    let (a, b) = (l1(&p.b2, p.grid.h), l1(&q.b2, q.grid.h));
    assert!((a - b).abs() < 1e-8 * a, "{a} vs {b}");
}

#[test]
fn couette_is_fixed_by_heat_flow() {
    let p = make_profile(ProfileSpec::Couette, YGrid::standard(), 1.0).unwrap();
    let q = p.evolve_heat(100.0).unwrap();
    assert_eq!(p.b, q.b);
    assert!(q.b2.iter().all(|v| *v == 0.0));
}

#[test]
fn inverse_round_trips() {
    let p = bump(1.0, 0.0);
    for y in [-15.0, -1.3, 0.0, 0.77, 12.0] {
        let (v, _) = p.b_and_b1(y);
        let (yy, dinv) = p.invert(v).unwrap();
        assert!((yy - y).abs() < 1e-12, "{y} -> {yy}");
        assert!((dinv * p.jet(y).b1 - 1.0).abs() < 1e-12);
    }
    assert!(matches!(p.invert(1e6), Err(Error::OutOfRange { .. })));
}

#[test]
fn assumptions_report() {
    let r = bump(1.0, 0.0).validate_assumptions();
    assert!(r.pass && r.monotone && r.decay_ok);
    assert!((r.b2_l1 - std::f64::consts::PI.sqrt()).abs() < 1e-8);
    assert!((r.c_m - 1.0 / (1.0 + std::f64::consts::PI.sqrt())).abs() < 1e-12);
    let c = make_profile(ProfileSpec::Couette, YGrid::standard(), 0.0).unwrap().validate_assumptions();
    assert!(c.pass);
    assert_eq!(c.b2_l1, 0.0);
}

#[test]
fn rejects_bad_profiles() {
    let g = YGrid::new(5.0, 101).unwrap();
    let mut b: Vec<f64> = g.points();
    b[40] = b[39];
    assert!(matches!(make_profile(ProfileSpec::Samples { b: b.clone() }, g, 0.0), Err(Error::MonotonicityViolated { .. })));
    b[40] = f64::NAN;
    assert!(matches!(make_profile(ProfileSpec::Samples { b }, g, 0.0), Err(Error::NanSample { index: 40 })));
    assert!(matches!(make_profile(ProfileSpec::Samples { b: vec![0.0; 3] }, g, 0.0), Err(Error::Invalid(_))));
    assert!(make_profile(ProfileSpec::GaussBump { a: -2.0 }, g, 0.0).is_err());
    assert!(make_profile(ProfileSpec::TanhPerturbed { a: 0.5, w: 0.0 }, g, 0.0).is_err());
    assert!(matches!(bump(1.0, 1e-3).evolve_heat(-1.0), Err(Error::NegativeTime(_))));
    assert!(matches!(YGrid::new(5.0, 100), Err(Error::InvalidGrid { .. })));
}

#[test]
fn samples_profile_matches_closed_form() {
    let g = YGrid::new(10.0, 2001).unwrap();
    let exact = make_profile(ProfileSpec::GaussBump { a: 0.5 }, g, 0.0).unwrap();
    let s = make_profile(ProfileSpec::Samples { b: exact.b.clone() }, g, 0.0).unwrap();
    for i in 5..g.n - 5 {
        assert!((s.b1[i] - exact.b1[i]).abs() < 10.0 * g.h * g.h);
        assert!((s.b2[i] - exact.b2[i]).abs() < 10.0 * g.h * g.h);
    }
}

#[test]
fn csv_has_header_and_full_precision() {
    let p = make_profile(ProfileSpec::Couette, YGrid::new(1.0, 3).unwrap(), 0.0).unwrap();
    let csv = p.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("y,b,b1,b2,b3"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row, vec![-1.0, -1.0, 1.0, 0.0, 0.0]);
    assert_eq!(fmt17(0.1).parse::<f64>().unwrap(), 0.1);
}
