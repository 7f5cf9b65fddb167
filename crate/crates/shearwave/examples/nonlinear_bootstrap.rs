//! A small nonlinear perturbation of a Gaussian-bump shear with the eleven
//! bootstrap quantities checked against 8C₁ times their right sides.

use shearwave::linear::Sponge;
use shearwave::nonlinear::*;
use shearwave::multiplier::DEFAULT_C0;
use shearwave::*;

fn main() -> Result<()> {
    let nu: f64 = 1e-4;
    let grid = YGrid::new(8.0, 801)?;
    let p = make_profile(ProfileSpec::GaussBump { a: 0.5 }, grid, nu)?;
    let modes = 4;
    let init = Field2D::canonical(grid, modes, nu, 1e-4 * nu.sqrt());
    let mut o = NonlinearOptions::new(0.25 / (modes as f64 * p.max_abs_b()));
    o.record_every = 20;
    o.sponge = Some(Sponge::standard(grid.half_width));
    let t_end = 0.5 * nu.powf(-1.0 / 3.0);
    let run = run_nonlinear(&init, &p, t_end, &o)?;
    let mut lin_opts = o.clone();
    lin_opts.linear_only = true;
    let lin = run_nonlinear(&init, &p, t_end, &lin_opts)?;
    let c1 = lin.history.iter().map(|s| (DEFAULT_C0 * nu.cbrt() * s.t).exp() * s.omega_hlog).fold(0.0, f64::max) / lin.omega_in_hlog;
    let eps0 = (run.omega_in_hlog + run.u_in_l2) / nu.sqrt();
    let rep = monitor_bootstrap(&run.history, run.omega_in_hlog, nu, DEFAULT_C0, c1, eps0, 0.5);
    println!("{} steps, C1 = {c1:.4}, distance from linear run {:.3e}", run.steps, state_distance(&run.final_state, &lin.final_state));
    for i in 0..rep.names.len() {
        println!("  {:<24} {:.3e} <= {:.3e}  {}", rep.names[i], rep.values[i], rep.bounds[i], rep.pass[i]);
    }
    Ok(())
}
