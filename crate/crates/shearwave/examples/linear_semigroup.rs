//! Linearized Navier–Stokes for one mode: enhanced dissipation rates across
//! viscosities, and the ghost-weighted energy along one run.

use shearwave::linear::{run_semigroup, SemigroupOptions};
use shearwave::multiplier::DEFAULT_C0;
use shearwave::*;

fn main() -> Result<()> {
    let mut last = None;
    for nu in [1e-3f64, 1e-4] {
        let t_end = 2.0 * nu.powf(-1.0 / 3.0);
        let g = YGrid::with_spacing(8.0, 0.6 / (1.886 * t_end))?;
        let p = make_profile(ProfileSpec::GaussBump { a: 0.5 }, g, nu)?;
        let w = ModeField::from_real(&p.grid, |y| (-y * y).exp());
        let mut o = SemigroupOptions::new(0.01, 20);
        o.a_energy_c0 = Some(DEFAULT_C0);
        let run = run_semigroup(&w, 1.0, nu, &p, t_end, &o)?;
        let rate = run.decay_rate(0.2 * t_end, t_end);
        print!("nu = {nu:.0e}: rate {rate:.4}, rate/nu^(1/3) {:.3}, int |u2|^2 {:.4}, c1 {:.3}", rate / nu.cbrt(), run.int_ux2_sq, run.fitted_c1());
        if let Some(r) = last {
            print!(", ratio {:.3}", rate / r);
        }
        println!();
        last = Some(rate);
    }
    Ok(())
}
