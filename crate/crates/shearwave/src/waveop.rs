//! The wave operator 𝔻 and its companion 𝔻¹, built from per-center 𝒥 tables.

use crate::error::{Error, Result};
use crate::field::ModeField;
use crate::functionals::{self, CenterData, JFunctionals};
use crate::poisson;
use crate::profile::ShearProfile;
use crate::quad;
use crate::rayleigh::{Centered, MarchOptions};
use crate::{c, Complex64, I};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub struct WaveOperatorContext {
    pub profile: ShearProfile,
    pub k: f64,
    pub stride: usize,
    /// Grid indices of the cached critical layers.
    pub centers: Vec<usize>,
    pub data: Vec<CenterData>,
    /// 𝒥₁ interpolated to every grid node.
    pub j1: Vec<f64>,
    /// 𝒥₂ = πb″/b′³ at every grid node.
    pub j2: Vec<f64>,
}

fn compatible_stride(n: usize, stride: usize) -> usize {
    let mut s = stride.max(1);
    while s > 1 && !(n - 1).is_multiple_of(s) {
        s -= 1;
    }
    s
}

impl WaveOperatorContext {
    pub fn new(p: &ShearProfile, k: f64) -> Result<Self> {
        Self::with_stride(p, k, 4, MarchOptions::fast(k))
    }

    pub fn with_stride(p: &ShearProfile, k: f64, stride: usize, opts: MarchOptions) -> Result<Self> {
        if k == 0.0 {
            return Err(Error::ZeroWavenumber);
        }
        let n = p.grid.n;
        let stride = compatible_stride(n, stride);
        let centers: Vec<usize> = (0..n).step_by(stride).collect();
        let data: Vec<CenterData> = centers
            .par_iter()
            .map(|&i| functionals::center_data(p, k, Centered::aligned(p, i), opts))
            .collect::<Result<_>>()?;
        let tab: Vec<f64> = data.iter().map(|d| d.j.j1).collect();
        let j1 = (0..n).map(|i| quad::lagrange3(&tab, i as f64 / stride as f64)).collect();
        let j2 = (0..n).map(|i| PI * p.b2[i] / p.b1[i].powi(3)).collect();
        Ok(Self { profile: p.clone(), k, stride, centers, data, j1, j2 })
    }

    pub fn table(&self) -> Vec<JFunctionals> {
        self.data.iter().map(|d| d.j).collect()
    }

    /// min (𝒥₁² + 𝒥₂²)/k² over the cached centers.
    pub fn delta_min(&self) -> f64 {
        self.data.iter().map(|d| (d.j.j1 * d.j.j1 + d.j.j2 * d.j.j2) / (self.k * self.k)).fold(f64::INFINITY, f64::min)
    }

    fn check(&self, w: &ModeField) -> Result<()> {
        let g = &self.profile.grid;
        if w.len() != g.n || (w.spacing - g.h).abs() > 1e-12 * g.h {
            return Err(Error::MissingCache(w.start));
        }
        Ok(())
    }

    /// 𝒥₃[w] at every grid node: exact at centers, interpolated (after removing
    /// the phase e^{−iktb}) in between.
    fn j3_all(&self, w: &[Complex64], phase_t: f64) -> Vec<Complex64> {
        let p = &self.profile;
        let kt = self.k * phase_t;
        let tab: Vec<Complex64> = self
            .data
            .par_iter()
            .zip(&self.centers)
            .map(|(d, &i)| functionals::compute_j3_nodes(&d.sol, w) * (I * (kt * p.b[i])).exp())
            .collect();
        (0..p.grid.n)
            .map(|i| quad::lagrange3(&tab, i as f64 / self.stride as f64) * (-I * (kt * p.b[i])).exp())
            .collect()
    }

    pub fn apply_d(&self, w: &ModeField) -> Result<ModeField> {
        self.apply_d_phase(w, 0.0)
    }

    /// 𝔻[w] with interpolation adapted to data oscillating like e^{−ik t b(y)}.
    pub fn apply_d_phase(&self, w: &ModeField, phase_t: f64) -> Result<ModeField> {
        self.check(w)?;
        let p = &self.profile;
        let j3 = self.j3_all(&w.values, phase_t);
        let out = (0..p.grid.n)
            .map(|i| {
                let (j1, j2) = (self.j1[i], self.j2[i]);
                let j4 = w.values[i] * (PI / (p.b1[i] * p.b1[i]));
                (j4 * j1 + j3[i] * j2) * (p.b1[i] / (PI * j1.hypot(j2)))
            })
            .collect();
        Ok(ModeField::on_grid(&p.grid, out))
    }

    /// 𝔻¹[g] = (b′g𝒥₁ + 𝒥₃[b″g]) / √(𝒥₁² + 𝒥₂²).
    pub fn apply_d1(&self, g: &ModeField) -> Result<ModeField> {
        self.check(g)?;
        let p = &self.profile;
        let bg: Vec<Complex64> = g.values.iter().zip(&p.b2).map(|(v, b)| v * *b).collect();
        let j3 = self.j3_all(&bg, 0.0);
        let out = (0..p.grid.n)
            .map(|i| {
                let (j1, j2) = (self.j1[i], self.j2[i]);
                (g.values[i] * (p.b1[i] * j1) + j3[i]) / j1.hypot(j2)
            })
            .collect();
        Ok(ModeField::on_grid(&p.grid, out))
    }

    /// 𝓡w = bw − b″Δ_k⁻¹w.
    pub fn rayleigh(&self, w: &ModeField) -> ModeField {
        let p = &self.profile;
        let psi = poisson::inverse_laplacian(&w.values, self.k, p.grid.h);
        ModeField::on_grid(&p.grid, (0..p.grid.n).map(|i| w.values[i] * p.b[i] - psi[i] * p.b2[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("y_c,pi1,pi2,J1,J2\n");
        for d in &self.data {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                crate::fmt17(d.j.y_c),
                crate::fmt17(d.j.pi1),
                crate::fmt17(d.j.pi2),
                crate::fmt17(d.j.j1),
                crate::fmt17(d.j.j2)
            ));
        }
        s
    }
}

/// ‖𝔻[𝓡w] − b𝔻[w]‖ / ‖w‖.
pub fn check_intertwine(ctx: &WaveOperatorContext, w: &ModeField) -> Result<f64> {
    let rw = ctx.rayleigh(w);
    let lhs = ctx.apply_d(&rw)?;
    let dw = ctx.apply_d(w)?;
    let rhs = dw.map(|i, z| z * ctx.profile.b[i]);
    Ok(lhs.sub(&rhs).norm() / w.norm())
}

/// |⟨w, g⟩ − ⟨𝔻w, 𝔻¹g⟩| / (‖w‖‖g‖) with the bilinear pairing.
pub fn duality_residual(ctx: &WaveOperatorContext, w: &ModeField, g: &ModeField) -> Result<f64> {
    let a = w.pair(g);
    let b = ctx.apply_d(w)?.pair(&ctx.apply_d1(g)?);
    Ok((a - b).norm() / (w.norm() * g.norm()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutatorReport {
    /// ‖[∂_s, 𝔻]w‖ / (ν‖w‖)
    pub c_s: f64,
    /// ‖[∂_y, 𝔻]w‖ / ‖w‖
    pub c_y: f64,
    /// ‖[∂_yy, 𝔻]w‖ / (‖∂_y w‖ + ‖w‖)
    pub c_yy: f64,
}

/// Commutator norm ratios. `ds` is the time step of the centered difference in s.
pub fn commutators(ctx: &WaveOperatorContext, w: &ModeField, ds: f64) -> Result<CommutatorReport> {
    let p = &ctx.profile;
    let h = p.grid.h;
    let dw = ctx.apply_d(w)?;
    let wy = ModeField::on_grid(&p.grid, quad::deriv(&w.values, h));
    let wyy = ModeField::on_grid(&p.grid, quad::deriv(&wy.values, h));
    let c_y = ModeField::on_grid(&p.grid, quad::deriv(&dw.values, h)).sub(&ctx.apply_d(&wy)?);
    let dwy = quad::deriv(&dw.values, h);
    let c_yy = ModeField::on_grid(&p.grid, quad::deriv(&dwy, h)).sub(&ctx.apply_d(&wyy)?);
    let c_s = if p.nu > 0.0 && !p.is_couette_like() {
        let opts = MarchOptions::fast(ctx.k);
        let d1 = WaveOperatorContext::with_stride(&p.evolve_heat(ds)?, ctx.k, ctx.stride, opts)?.apply_d(w)?;
        let d2 = WaveOperatorContext::with_stride(&p.evolve_heat(2.0 * ds)?, ctx.k, ctx.stride, opts)?.apply_d(w)?;
        // one-sided second-order difference; w does not depend on s, so [∂_s, 𝔻]w = (∂_s𝔻)w
        let d = dw.scale(c(-3.0)).add(&d1.scale(c(4.0))).sub(&d2).scale(c(1.0 / (2.0 * ds)));
        d.norm() / (p.nu * w.norm())
    } else {
        0.0
    };
    let wn = w.norm();
    Ok(CommutatorReport { c_s, c_y: c_y.norm() / wn, c_yy: c_yy.norm() / (wy.norm() + wn) })
}

/// Doubling the center density until 𝔻[w] changes by less than `tol` (relative).
/// Returns (stride, relative change) for each level tried.
pub fn refinement_study(p: &ShearProfile, k: f64, w: &ModeField, start_stride: usize, tol: f64) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    let mut stride = compatible_stride(p.grid.n, start_stride);
    let mut prev = WaveOperatorContext::with_stride(p, k, stride, MarchOptions::fast(k))?.apply_d(w)?;
    while stride > 1 {
        let next_stride = compatible_stride(p.grid.n, stride / 2);
        let cur = WaveOperatorContext::with_stride(p, k, next_stride, MarchOptions::fast(k))?.apply_d(w)?;
        let change = cur.sub(&prev).norm() / cur.norm().max(1e-300);
        out.push((next_stride, change));
        stride = next_stride;
        prev = cur;
        if change < tol {
            break;
        }
    }
    Ok(out)
}
