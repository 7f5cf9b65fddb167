//! Frozen-coefficient linearized Euler: the representation formula and an RK4 oracle.

use super::inhom::homogeneous_kernel;
use super::{Centered, MarchOptions};
use crate::error::{Error, Result};
use crate::field::ModeField;
use crate::functionals;
use crate::poisson;
use crate::profile::ShearProfile;
use crate::{c, Complex64, I};
use rayon::prelude::*;
use std::f64::consts::PI;

/// ψ̃(t, k, ·) from the representation formula, with the profile frozen.
pub fn evolve_euler_representation(p: &ShearProfile, k: f64, w_in: &ModeField, t: f64) -> Result<ModeField> {
    evolve_euler_representation_with(p, k, w_in, t, MarchOptions::accurate(k))
}

pub fn evolve_euler_representation_with(
    p: &ShearProfile,
    k: f64,
    w_in: &ModeField,
    t: f64,
    opts: MarchOptions,
) -> Result<ModeField> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    if k == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    let h = p.grid.h;
    let guard = h * k.abs() * t * p.b1_max();
    if guard > 0.5 {
        return Err(Error::UnderResolvedOscillation(guard));
    }
    let n = p.grid.n;
    let w: Vec<Complex64> = p.grid.points().iter().map(|&y| w_in.sample(y)).collect();
    let wmax = w.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let zero = vec![c(0.0); n];
    if wmax == 0.0 {
        return Ok(ModeField::on_grid(&p.grid, zero));
    }
    let psi = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Vec<Complex64>> {
            if i == 0 || i == n - 1 {
                return Ok(zero.clone());
            }
            let cd = functionals::center_data(p, k, Centered::aligned(p, i), opts)?;
            let j3 = functionals::compute_j3_nodes(&cd.sol, &w);
            let b1 = p.b1[i];
            let j4 = w[i] * (PI / (b1 * b1));
            let (j1, j2) = (cd.j.j1, cd.j.j2);
            let a = -(j3 * j2 + j4 * j1) * (b1 / (PI * (j1 * j1 + j2 * j2))) * (-I * (k * p.b[i] * t)).exp();
            let kern = homogeneous_kernel(&cd.sol);
            Ok(kern.iter().map(|&kv| a * (kv * h)).collect())
        })
        .try_reduce(|| zero.clone(), |x, y| Ok(x.iter().zip(&y).map(|(a, b)| a + b).collect()))?;
    Ok(ModeField::on_grid(&p.grid, psi))
}

/// ∂_tω = −ik(bω − b″Δ_k⁻¹ω) by classical RK4, Dirichlet at ±L.
pub fn step_linear_euler(p: &ShearProfile, k: f64, w_in: &ModeField, t: f64, dt: f64) -> Result<ModeField> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let bmax = p.max_abs_b();
    let lim = 0.1 / (k.abs() * bmax);
    if dt > lim * (1.0 + 1e-12) {
        return Err(Error::Cfl(format!("dt = {dt} exceeds 0.1/(|k| max|b|) = {lim}")));
    }
    let h = p.grid.h;
    let mut w: Vec<Complex64> = p.grid.points().iter().map(|&y| w_in.sample(y)).collect();
    let rhs = |om: &[Complex64]| -> Vec<Complex64> {
        let psi = poisson::inverse_laplacian(om, k, h);
        (0..om.len()).map(|i| -I * k * (om[i] * p.b[i] - psi[i] * p.b2[i])).collect()
    };
    let steps = (t / dt).ceil() as usize;
    let dt = if steps > 0 { t / steps as f64 } else { 0.0 };
    let axpy = |a: &[Complex64], b: &[Complex64], s: f64| -> Vec<Complex64> { a.iter().zip(b).map(|(x, y)| x + y * s).collect() };
    for _ in 0..steps {
        let k1 = rhs(&w);
        let k2 = rhs(&axpy(&w, &k1, 0.5 * dt));
        let k3 = rhs(&axpy(&w, &k2, 0.5 * dt));
        let k4 = rhs(&axpy(&w, &k3, dt));
        for i in 0..w.len() {
            w[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
        }
    }
    Ok(ModeField::on_grid(&p.grid, w))
}
