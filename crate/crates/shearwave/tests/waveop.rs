use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shearwave::waveop::{self, WaveOperatorContext};
use shearwave::*;

fn bump(nu: f64) -> ShearProfile {
    make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::new(12.0, 1201).unwrap(), nu).unwrap()
}

fn samples(p: &ShearProfile, n: usize, seed: u64) -> Vec<ModeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| ModeField::random_band_limited(&p.grid, &mut rng, 2.0, 2.0)).collect()
}

#[test]
fn d_is_linear() {
    let p = bump(1e-3);
    let ctx = WaveOperatorContext::new(&p, 1.0).unwrap();
    let w = samples(&p, 2, 1);
    let a = Complex64::new(0.7, -1.3);
    let lhs = ctx.apply_d(&w[0].scale(a).add(&w[1])).unwrap();
    let rhs = ctx.apply_d(&w[0]).unwrap().scale(a).add(&ctx.apply_d(&w[1]).unwrap());
    assert!(lhs.sub(&rhs).norm() < 1e-12 * rhs.norm());
    let lhs1 = ctx.apply_d1(&w[0].scale(a).add(&w[1])).unwrap();
    let rhs1 = ctx.apply_d1(&w[0]).unwrap().scale(a).add(&ctx.apply_d1(&w[1]).unwrap());
    assert!(lhs1.sub(&rhs1).norm() < 1e-12 * rhs1.norm());
}

#[test]
fn intertwining_and_duality_on_bump() {
    let p = bump(1e-3);
    for k in [1.0, 3.0] {
        let ctx = WaveOperatorContext::new(&p, k).unwrap();
        let w = samples(&p, 4, k as u64);
        for pair in w.chunks(2) {
            assert!(waveop::check_intertwine(&ctx, &pair[0]).unwrap() <= 1e-3);
            assert!(waveop::duality_residual(&ctx, &pair[0], &pair[1]).unwrap() <= 1e-3);
        }
    }
}

#[test]
fn delta_min_is_positive_on_every_center() {
    let p = bump(1e-3);
    let ctx = WaveOperatorContext::new(&p, 2.0).unwrap();
    assert!(ctx.delta_min() > functionals::DELTA_THRESHOLD);
    for (d, &i) in ctx.data.iter().zip(&ctx.centers) {
        assert!(d.j.j1 * d.j.j1 + d.j.j2 * d.j.j2 >= ctx.delta_min() * 4.0 * (1.0 - 1e-12));
        assert_eq!(d.j.y_c, p.grid.y(i));
    }
}

#[test]
fn couette_commutators_vanish() {
    let p = make_profile(ProfileSpec::Couette, YGrid::new(12.0, 1201).unwrap(), 1e-3).unwrap();
    let ctx = WaveOperatorContext::new(&p, 1.0).unwrap();
    let w = ModeField::from_real(&p.grid, |y| (-y * y).exp());
    let r = waveop::commutators(&ctx, &w, 1.0).unwrap();
    assert_eq!(r.c_s, 0.0);
    assert!(r.c_y < 1e-12 && r.c_yy < 1e-12, "{r:?}");
}

#[test]
fn bump_commutators_are_bounded_across_viscosity() {
    let mut cy = Vec::new();
    for nu in [1e-3, 1e-4] {
        let p = bump(nu);
        let ctx = WaveOperatorContext::new(&p, 1.0).unwrap();
        let w = ModeField::from_real(&p.grid, |y| (-y * y).exp());
        let r = waveop::commutators(&ctx, &w, 1.0).unwrap();
        assert!(r.c_s.is_finite() && r.c_y.is_finite() && r.c_yy.is_finite());
        cy.push(r.c_y);
    }
    assert!((cy[0] / cy[1] - 1.0).abs() < 0.1, "{cy:?}");
}

#[test]
fn refinement_converges() {
    let p = bump(1e-3);
    let w = ModeField::from_real(&p.grid, |y| (-y * y).exp());
    let steps = waveop::refinement_study(&p, 1.0, &w, 8, 1e-4).unwrap();
    let last = steps.last().unwrap();
    assert!(last.1 < 1e-4, "{steps:?}");
    assert!(steps.windows(2).all(|s| s[1].1 < s[0].1));
}

#[test]
fn rejects_mismatched_fields_and_zero_k() {
    let p = bump(1e-3);
    assert!(matches!(WaveOperatorContext::new(&p, 0.0), Err(Error::ZeroWavenumber)));
    let ctx = WaveOperatorContext::with_stride(&p, 1.0, 8, rayleigh::MarchOptions::fast(1.0)).unwrap();
    let w = ModeField::from_real(&YGrid::new(12.0, 601).unwrap(), |y| (-y * y).exp());
    assert!(matches!(ctx.apply_d(&w), Err(Error::MissingCache(_))));
}

#[test]
fn table_csv_has_one_row_per_center() {
    let p = bump(1e-3);
    let ctx = WaveOperatorContext::with_stride(&p, 1.0, 20, rayleigh::MarchOptions::fast(1.0)).unwrap();
    let csv = ctx.to_csv();
    assert!(csv.starts_with("y_c,pi1,pi2,J1,J2\n"));
    assert_eq!(csv.lines().count(), ctx.centers.len() + 1);
    assert_eq!(ctx.table().len(), ctx.centers.len());
}
