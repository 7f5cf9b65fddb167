//! Scan initial sizes ε₀ν^β and classify each run as stable or escaped.

use shearwave::nonlinear::*;
use shearwave::*;

fn main() -> Result<()> {
    let grid = YGrid::new(8.0, 401)?;
    let p = make_profile(ProfileSpec::GaussBump { a: 0.5 }, grid, 1e-3)?;
    let opts = ScanOptions { modes: 4, grid, cfl: 0.25, c0: 0.01, horizon: 0.5, sponge: true };
    let rows = scan_threshold(&p, &[0.5, 0.6], &[0.0, 0.1, 10.0], &[1e-3], &opts)?;
    print!("{}", scan_csv(&rows));
    let bad = monotonicity_violations(&rows);
    println!("monotonicity violations: {}", bad.len());
    Ok(())
}
