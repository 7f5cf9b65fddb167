//! Π₁, Π₂ and the 𝒥 functionals across critical layers, plus the Wronskian
//! approaching its limiting value as ε → 0.

use shearwave::functionals::{compute_j, compute_wronskian};
use shearwave::*;

fn main() -> Result<()> {
    let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 1e-3)?;
    println!("{:>6} {:>4} {:>12} {:>12} {:>12} {:>12}", "y_c", "k", "Pi1", "Pi2", "J1", "J2");
    for k in [1.0, 2.0] {
        for yc in [-2.0, 0.0, 2.0] {
            let j = compute_j(&p, k, yc)?;
            println!("{yc:6.2} {k:4} {:12.6} {:12.6} {:12.6} {:12.6}", j.pi1, j.pi2, j.j1, j.j2);
        }
    }
    let j = compute_j(&p, 1.0, 0.0)?;
    println!("limit J1 - iJ2 = {:.6}", Complex64::new(j.j1, -j.j2));
    for eps in [0.1, 0.05, 0.025] {
        println!("eps = {eps:5}: D+ = {:.6}", compute_wronskian(&p, 1.0, 0.0, eps, 1.0)?);
    }
    Ok(())
}
