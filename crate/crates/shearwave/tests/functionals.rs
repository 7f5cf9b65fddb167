use shearwave::functionals::*;
use shearwave::rayleigh;
use shearwave::*;
use std::f64::consts::PI;

fn couette() -> ShearProfile {
    make_profile(ProfileSpec::Couette, YGrid::standard(), 1e-3).unwrap()
}

fn bump() -> ShearProfile {
    make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 1e-3).unwrap()
}

/// b defined through b⁻¹(v) = v + a(e^{−v²} − 1), so that (b⁻¹)″ is even and b(0) = 0.
fn even_inverse_profile(a: f64) -> ShearProfile {
    let g = YGrid::standard();
    let inv = |v: f64| v + a * ((-v * v).exp() - 1.0);
    let b = g
        .points()
        .iter()
        .map(|&y| {
            let mut v = y;
            for _ in 0..60 {
                let d = 1.0 - 2.0 * a * v * (-v * v).exp();
                v -= (inv(v) - y) / d;
            }
            v
        })
        .collect();
    make_profile(ProfileSpec::Samples { b }, g, 1e-3).unwrap()
}

#[test]
fn couette_pi_values() {
    let p = couette();
    for k in [1.0, 2.0, 4.0] {
        let j = compute_j(&p, k, 0.0).unwrap();
        assert!(j.pi1.abs() <= 1e-6);
        assert_eq!(j.j2, 0.0);
        assert!((j.pi2 + 2.0 * k).abs() <= 1e-3, "k={k} pi2={}", j.pi2);
        assert!((j.j1 + 2.0 * k).abs() <= 1e-3);
    }
}

#[test]
fn couette_pi2_scales_linearly() {
    let p = couette();
    let a = compute_pi2(&p, 1.0, 0.3).unwrap();
    let b = compute_pi2(&p, 2.0, 0.3).unwrap();
    assert!((b / a - 2.0).abs() < 1e-4);
}

#[test]
fn bump_pi1_dual_formulas_agree() {
    let p = bump();
    for yc in [0.0, -1.3, 2.2] {
        let a = compute_pi1(&p, yc).unwrap();
        let b = pi1_via_hilbert(&p, yc).unwrap();
        assert!((a - b).abs() <= 1e-3 * a.abs().max(1e-8), "yc={yc}: {a} vs {b}");
    }
}

#[test]
fn pi1_vanishes_when_inverse_curvature_is_even() {
    let p = even_inverse_profile(0.3);
    let v = compute_pi1(&p, 0.0).unwrap();
    assert!(v.abs() < 1e-5, "pi1(0) = {v}");
}

#[test]
fn pi1_of_gauss_bump_at_zero_is_not_zero() {
    // an even b″ does not make Π₁(0) vanish: (b⁻¹)″ is not even
    let v = compute_pi1(&bump(), 0.0).unwrap();
    assert!(v > 0.5, "pi1(0) = {v}");
}

#[test]
fn pi1_even_for_odd_profile() {
    let p = make_profile(ProfileSpec::TanhPerturbed { a: 0.5, w: 1.0 }, YGrid::standard(), 1e-3).unwrap();
    for yc in [0.7, 1.9] {
        let a = compute_pi1(&p, yc).unwrap();
        let b = compute_pi1(&p, -yc).unwrap();
        assert!((a - b).abs() < 1e-6 * a.abs().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn pi2_negative_and_j2_closed_form() {
    let p = bump();
    for k in [1.0, 3.0] {
        for yc in [-3.0, -0.5, 0.0, 1.0, 4.0] {
            let j = compute_j(&p, k, yc).unwrap();
            assert!(j.pi2 < 0.0);
            let jt = p.jet(yc);
            assert!((j.j2 - PI * jt.b2 / jt.b1.powi(3)).abs() < 1e-12);
            assert!((j.j1 - (j.pi1 / jt.b1 + j.pi2)).abs() < 1e-12);
        }
    }
}

#[test]
fn pi2_bounded_by_multiples_of_k() {
    let p = bump();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for k in [1.0, 2.0, 4.0, 8.0] {
        for yc in [-2.0, 0.0, 2.0] {
            let r = -compute_pi2(&p, k, yc).unwrap() / k;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    assert!(lo > 0.0 && hi.is_finite());
    println!("C* = {lo:.4}, C** = {hi:.4}");
}

#[test]
fn j3_j4_vanish_for_zero_input_and_j4_closed_form() {
    let p = bump();
    let sol = rayleigh::solve_phi1(&p, 1.0, 0.0).unwrap();
    let zero = vec![Complex64::new(0.0, 0.0); sol.nodes.len()];
    assert_eq!(compute_j3_nodes(&sol, &zero), Complex64::new(0.0, 0.0));
    assert_eq!(compute_j4(&p, 0.0, Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
    let c = couette();
    let w = Complex64::new(0.4, -0.2);
    assert!((compute_j4(&c, 1.5, w) - w * PI).norm() < 1e-14);
}

#[test]
fn j3_split_matches_direct() {
    let p = bump();
    let sol = rayleigh::solve_phi1(&p, 1.0, 0.4).unwrap();
    let w: Vec<Complex64> = (0..sol.nodes.len()).map(|i| Complex64::new((-sol.nodes.y[i].powi(2)).exp(), 0.0)).collect();
    let a = compute_j3_nodes(&sol, &w);
    let b = compute_j3_split(&sol, &w);
    assert!((a - b).norm() < 1e-6 * a.norm(), "{a} vs {b}");
}

#[test]
fn wronskian_limit_and_conjugation() {
    let p = bump();
    let (k, yc) = (1.0, 0.3);
    let j = compute_j(&p, k, yc).unwrap();
    let target = Complex64::new(j.j1, -j.j2);
    let ds: Vec<Complex64> = [0.05, 0.025, 0.0125].iter().map(|e| compute_wronskian(&p, k, yc, *e, 1.0).unwrap()).collect();
    // first-order Richardson
    let r1 = ds[1] * 2.0 - ds[0];
    let r2 = ds[2] * 2.0 - ds[1];
    let extrap = r2 * 2.0 - r1;
    assert!((extrap - target).norm() < 1e-2 * target.norm(), "{extrap} vs {target}");
    let dm = compute_wronskian(&p, k, yc, 0.025, -1.0).unwrap();
    assert!((dm - ds[1].conj()).norm() < 1e-10 * dm.norm());
}

#[test]
fn couette_wronskian_small_eps() {
    let d = compute_wronskian(&couette(), 1.0, 0.0, 0.01, 1.0).unwrap();
    assert!((d - Complex64::new(-2.0, 0.0)).norm() < 0.05, "{d}");
}

#[test]
fn spectrum_couette_and_bump() {
    let ys = [-5.0, -2.0, 0.0, 2.0, 5.0];
    let rc = check_spectrum(&couette(), 2, &[0.0], &ys).unwrap();
    assert!(rc.eigenvalue_free);
    assert!((rc.delta_min - 4.0).abs() < 1e-3);
    let rb = check_spectrum(&bump(), 2, &[0.0, 100.0], &ys).unwrap();
    assert!(rb.eigenvalue_free, "delta_min {}", rb.delta_min);
    assert_eq!(rb.rows.len(), 2 * 2 * ys.len());
}

#[test]
fn delta_min_stable_under_refinement() {
    let ys = [-3.0, -1.0, 0.0, 1.0, 3.0];
    let coarse = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::new(20.0, 1001).unwrap(), 1e-3).unwrap();
    let a = check_spectrum(&coarse, 2, &[0.0], &ys).unwrap().delta_min;
    let b = check_spectrum(&bump(), 2, &[0.0], &ys).unwrap().delta_min;
    assert!((a - b).abs() < 0.05 * b, "{a} vs {b}");
}
