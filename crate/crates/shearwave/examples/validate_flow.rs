//! Build a Gaussian-bump shear, evolve it by the heat flow and check the
//! monotonicity, decay and spectral assumptions.

use shearwave::functionals::check_spectrum;
use shearwave::*;

fn main() -> Result<()> {
    let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 1e-3)?;
    for s in [0.0, 100.0, 1000.0] {
        let q = p.evolve_heat(s)?;
        let r = q.validate_assumptions();
        println!("s = {s:6}: b' in [{:.4}, {:.4}], |b''|_L1 = {:.6}, pass = {}", r.b1_min, r.b1_max, r.b2_l1, r.pass);
    }
    let ys: Vec<f64> = (-4..=4).map(|i| i as f64).collect();
    let rep = check_spectrum(&p, 3, &[0.0, 100.0], &ys)?;
    println!("delta_min = {:.4}, eigenvalue free = {}", rep.delta_min, rep.eigenvalue_free);
    Ok(())
}
