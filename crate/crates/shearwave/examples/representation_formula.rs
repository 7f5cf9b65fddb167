//! Frozen-coefficient linearized Euler: the stream function from the
//! representation formula against direct RK4 time stepping.

use shearwave::poisson::inverse_laplacian;
use shearwave::rayleigh;
use shearwave::*;

fn main() -> Result<()> {
    let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::new(10.0, 2001)?, 0.0)?;
    let k = 1.0;
    let w = ModeField::from_real(&p.grid, |y| (-y * y).exp());
    let dt = 0.1 / (k * p.max_abs_b());
    for t in [1.0, 5.0, 10.0] {
        let psi = rayleigh::evolve_euler_representation(&p, k, &w, t)?;
        let om = rayleigh::step_linear_euler(&p, k, &w, t, dt)?;
        let direct = ModeField::on_grid(&p.grid, inverse_laplacian(&om.values, k, p.grid.h));
        println!("t = {t:4}: |psi| = {:.6e}, relative difference {:.2e}", psi.norm(), psi.sub(&direct).norm() / direct.norm());
    }
    Ok(())
}
