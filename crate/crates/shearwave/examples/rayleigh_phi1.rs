//! Homogeneous Rayleigh solutions around a critical layer: φ₁ for Couette
//! against sinh(ku)/(ku), then φ₁ and φ₂^± on a Gaussian bump.

use shearwave::rayleigh::{self, MarchOptions};
use shearwave::*;

fn main() -> Result<()> {
    let couette = make_profile(ProfileSpec::Couette, YGrid::standard(), 0.0)?;
    let sol = rayleigh::solve_phi1(&couette, 2.0, 0.0)?;
    let c = sol.nodes.center;
    for m in [10, 50, 100] {
        let u = sol.nodes.u(c + m);
        let exact = (2.0 * u).sinh() / (2.0 * u);
        println!("couette u = {u:.2}: phi1 = {:.12}, exact = {exact:.12}", sol.ln_phi1[c + m].exp());
    }

    let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 0.0)?;
    let (k, yc) = (1.0, 0.5);
    let eps = 0.5 * rayleigh::eps0(k);
    let nodes = rayleigh::refined_nodes(&p, yc, eps, 1)?;
    let sol = rayleigh::solve_phi1_on(&p, k, nodes, MarchOptions::accurate(k))?;
    let phi2 = rayleigh::solve_phi2(&sol, eps, 1.0)?;
    println!("bump: phi2+ converged in {} iterations at eps = {eps}", phi2.iterations);
    let c = sol.nodes.center;
    for m in [0usize, 200, 800] {
        let j = c + m;
        println!("  y = {:.3}: phi1 = {:.6}, F = {:.6}, phi2 = {:.6}", sol.nodes.y[j], sol.ln_phi1[j].exp(), sol.f[j], phi2.values[j]);
    }
    Ok(())
}
