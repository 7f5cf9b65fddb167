//! The wave operator on a Gaussian bump: intertwining with the Rayleigh
//! operator, duality with 𝔻¹, the norm band and commutators.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shearwave::waveop::{self, WaveOperatorContext};
use shearwave::*;

fn main() -> Result<()> {
    let p = make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 1e-3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in [1.0, 2.0, 4.0] {
        let ctx = WaveOperatorContext::new(&p, k)?;
        let w = ModeField::random_band_limited(&p.grid, &mut rng, 2.0, 2.0);
        let g = ModeField::random_band_limited(&p.grid, &mut rng, 2.0, 2.0);
        println!(
            "k = {k}: intertwining {:.2e}, duality {:.2e}, |Dw|/|w| = {:.4}, delta_min = {:.4}",
            waveop::check_intertwine(&ctx, &w)?,
            waveop::duality_residual(&ctx, &w, &g)?,
            ctx.apply_d(&w)?.norm() / w.norm(),
            ctx.delta_min()
        );
    }
    let ctx = WaveOperatorContext::new(&p, 1.0)?;
    let w = ModeField::from_real(&p.grid, |y| (-y * y).exp());
    println!("commutators: {:?}", waveop::commutators(&ctx, &w, 1.0)?);
    Ok(())
}
