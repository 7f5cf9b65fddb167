//! The ghost multiplier: its envelope bounds, and the arctan parts applied
//! both in Fourier space and through their physical-space kernels.

use shearwave::multiplier::*;
use shearwave::*;

fn main() -> Result<()> {
    let spec = MultiplierSpec::new(1.0, 5.0, 1e-4);
    let env = spec.envelope();
    for eta in [-50.0, 0.0, 5.0, 10.0, 50.0] {
        println!("eta = {eta:6}: A/envelope = {:.6}, dA/dt = {:.6}", eval_a(&spec, eta) / env, da_ring_dt(&spec, eta));
    }
    let g = YGrid::new(20.0, 4001)?;
    let f = ModeField::from_fn(&g, |y| Complex64::from_polar((-y * y / 4.0).exp(), 1.5 * y));
    for which in [ArctanKind::Plain, ArctanKind::Viscous] {
        let four = apply_arctan_fourier(&spec, which, &f);
        let phys = apply_arctan_kernel_physical(&spec, &f, which);
        println!("{which:?}: kernel vs Fourier {:.2e}, taper residual {:.1e}", phys.sub(&four.field).norm() / four.field.norm(), four.taper_residual);
    }
    let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 1e-4)?;
    let (_, ratio) = commutator_b_a(&spec, &p, &f);
    println!("commutator [a^2, A](d_v - ikt) ratio = {ratio:.4}");
    Ok(())
}
