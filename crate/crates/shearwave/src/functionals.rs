//! Wronskian, Π₁, Π₂ and the 𝒥 functionals, plus the spectral-condition scan.

use crate::error::{Error, Result};
use crate::profile::ShearProfile;
use crate::quad::{self, Scalar};
use crate::rayleigh::{self, Centered, HomogeneousSolution, MarchOptions};
use crate::{c, Complex64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct JFunctionals {
    pub s: f64,
    pub k: f64,
    pub y_c: f64,
    pub pi1: f64,
    pub pi2: f64,
    pub j1: f64,
    pub j2: f64,
}

impl JFunctionals {
    pub fn norm(&self) -> f64 {
        self.j1.hypot(self.j2)
    }
}

/// Integral of the samples over the whole slice (fourth order).
pub fn slice_integral<T: Scalar>(f: &[T], h: f64) -> T {
    let mut acc = T::default();
    if f.len() < 2 {
        return acc;
    }
    for i in 0..f.len() - 1 {
        acc = acc + quad::cell_integral(f, i, h);
    }
    acc
}

/// PV ∫ g(u)/u du over the nodes, where g is smooth and sampled with u = (j − c)h.
/// `dg0` is g′(0). The symmetric window is paired; the unpaired remainder is
/// integrated directly.
pub fn pv_integral<T: Scalar>(g: &[T], dg0: T, h: f64, c: usize) -> T {
    let n = g.len();
    let m = c.min(n - 1 - c);
    let mut q = vec![T::default(); 2 * m + 1];
    q[m] = dg0 * 2.0;
    for j in 1..=m {
        let v = (g[c + j] - g[c - j]) * (1.0 / (j as f64 * h));
        q[m + j] = v;
        q[m - j] = v;
    }
    let mut acc = slice_integral(&q, h) * 0.5;
    // an edge center has no symmetric window; its one-sided remainder starts one node out
    let (lo_end, hi_start) = if m == 0 { (c.saturating_sub(1), c + 1) } else { (c - m, c + m) };
    if hi_start + 1 < n {
        let tail: Vec<T> = (hi_start..n).map(|j| g[j] * (1.0 / ((j as f64 - c as f64) * h))).collect();
        acc = acc + slice_integral(&tail, h);
    }
    if lo_end > 0 && lo_end < c {
        let tail: Vec<T> = (0..=lo_end).map(|j| g[j] * (1.0 / ((j as f64 - c as f64) * h))).collect();
        acc = acc + slice_integral(&tail, h);
    }
    acc
}

/// Derivative of node samples at index c (fourth order where possible).
pub fn node_derivative<T: Scalar>(f: &[T], h: f64, c: usize) -> T {
    let n = f.len();
    if n < 5 {
        if n < 2 {
            return T::default();
        }
        let (a, b) = if c == 0 { (0, 1) } else if c == n - 1 { (n - 2, n - 1) } else { (c - 1, c + 1) };
        return (f[b] - f[a]) * (1.0 / ((b - a) as f64 * h));
    }
    let lo = c.saturating_sub(2).min(n - 5);
    quad::deriv(&f[lo..lo + 5], h)[c - lo]
}

/// Π₁(y′) = PV ∫ (b′(y′) − b′(y)) / (b(y) − b(y′))² dy, including the far field.
pub fn compute_pi1_nodes(p: &ShearProfile, nodes: &Centered) -> f64 {
    let j = nodes.jet_c;
    if p.is_couette_like() {
        return 0.0;
    }
    let h = nodes.delta;
    let cc = nodes.center;
    let g: Vec<f64> = (0..nodes.len())
        .map(|i| {
            if i == cc {
                -j.b2 / (j.b1 * j.b1)
            } else {
                nodes.u(i) * (j.b1 - nodes.b1[i]) / (nodes.beta[i] * nodes.beta[i])
            }
        })
        .collect();
    let dg0 = -(j.b3 / 2.0 - j.b2 * j.b2 / j.b1) / (j.b1 * j.b1);
    let mut v = pv_integral(&g, dg0, h, cc);
    let n = nodes.len();
    let (bl, br) = (nodes.beta[0], nodes.beta[n - 1]);
    let (cl, cr) = (nodes.b1[0], nodes.b1[n - 1]);
    // constant-slope extension beyond the truncated window
    if br != 0.0 {
        v += (j.b1 - cr) / (cr * br);
    }
    if bl != 0.0 {
        v += (j.b1 - cl) / (cl * bl.abs());
    }
    v
}

pub fn compute_pi1(p: &ShearProfile, y_c: f64) -> Result<f64> {
    let nodes = Centered::new(p, y_c, p.grid.h)?;
    let a = compute_pi1_nodes(p, &nodes);
    let b = pi1_via_hilbert(p, y_c)?;
    let scale = a.abs().max(b.abs()).max(1e-6);
    if (a - b).abs() > 1e-3 * scale && (a - b).abs() > 1e-6 {
        return Err(Error::InconsistentPv { a, b });
    }
    Ok(a)
}

/// Π₁ = b′(y′) · PV ∫ (b⁻¹)″(v) / (v − v′) dv, evaluated on a uniform v-grid.
pub fn pi1_via_hilbert(p: &ShearProfile, y_c: f64) -> Result<f64> {
    if p.is_couette_like() {
        return Ok(0.0);
    }
    let jc = p.jet(y_c);
    let n = p.grid.n;
    let (vlo, vhi) = (p.b[0], p.b[n - 1]);
    let hv = p.grid.h * jc.b1.min(1.0);
    let left = ((jc.b - vlo) / hv).floor() as usize;
    let right = ((vhi - jc.b) / hv).floor() as usize;
    let mut f = Vec::with_capacity(left + right + 1);
    for i in 0..left + right + 1 {
        let v = jc.b + (i as f64 - left as f64) * hv;
        let (y, _) = p.invert(v.clamp(vlo, vhi))?;
        let jt = p.jet(y);
        f.push(-jt.b2 / jt.b1.powi(3));
    }
    let df0 = (-jc.b3 / jc.b1.powi(3) + 3.0 * jc.b2 * jc.b2 / jc.b1.powi(4)) / jc.b1;
    // PV ∫ f(v)/(v − v′): g = f, pairs over the symmetric window.
    Ok(jc.b1 * pv_integral(&f, df0, hv, left))
}

/// Π₂(k, y′) = ∫ (φ₁⁻² − 1)/(b − b(y′))² dy, with analytic far-field tails.
pub fn compute_pi2_sol(sol: &HomogeneousSolution) -> f64 {
    let nd = &sol.nodes;
    let cc = nd.center;
    let k2 = sol.k * sol.k;
    let f: Vec<f64> = (0..nd.len())
        .map(|i| {
            if i == cc {
                -k2 / (3.0 * nd.jet_c.b1 * nd.jet_c.b1)
            } else {
                (-2.0 * sol.ln_phi1[i]).exp_m1() / (nd.beta[i] * nd.beta[i])
            }
        })
        .collect();
    let n = nd.len();
    let mut v = quad::trapz(&f, nd.delta);
    if nd.beta[n - 1] != 0.0 {
        v -= 1.0 / (nd.b1[n - 1] * nd.beta[n - 1]);
    }
    if nd.beta[0] != 0.0 {
        v -= 1.0 / (nd.b1[0] * nd.beta[0].abs());
    }
    v
}

pub fn compute_pi2(p: &ShearProfile, k: f64, y_c: f64) -> Result<f64> {
    let sol = rayleigh::solve_phi1(p, k, y_c)?;
    Ok(compute_pi2_sol(&sol))
}

/// Everything about one critical layer that does not depend on the input field.
#[derive(Clone, Debug)]
pub struct CenterData {
    pub sol: HomogeneousSolution,
    pub j: JFunctionals,
}

pub fn center_data(p: &ShearProfile, k: f64, nodes: Centered, opts: MarchOptions) -> Result<CenterData> {
    let pi1 = compute_pi1_nodes(p, &nodes);
    let sol = rayleigh::solve_phi1_on(p, k, nodes, opts)?;
    let pi2 = compute_pi2_sol(&sol);
    let jc = sol.nodes.jet_c;
    let j = JFunctionals {
        s: p.s,
        k,
        y_c: sol.nodes.y_c,
        pi1,
        pi2,
        j1: pi1 / jc.b1 + pi2,
        j2: PI * jc.b2 / jc.b1.powi(3),
    };
    Ok(CenterData { sol, j })
}

pub fn compute_j(p: &ShearProfile, k: f64, y_c: f64) -> Result<JFunctionals> {
    let nodes = Centered::new(p, y_c, p.grid.h)?;
    Ok(center_data(p, k, nodes, MarchOptions::accurate(k))?.j)
}

/// 𝒥₃[w] = PV ∫ (∫_{y′}^{y₁} w φ₁) / (β²φ₁²) dy₁ with w sampled on the nodes of `sol`.
pub fn compute_j3_nodes(sol: &HomogeneousSolution, w: &[Complex64]) -> Complex64 {
    let nd = &sol.nodes;
    let h = nd.delta;
    let cc = nd.center;
    let jc = nd.jet_c;
    let gs = quad::cumulative_scaled(w, &sol.ln_phi1, h, cc);
    let g: Vec<Complex64> = (0..nd.len())
        .map(|i| {
            if i == cc {
                w[cc] / (jc.b1 * jc.b1)
            } else {
                gs[i] * (nd.u(i) * (-sol.ln_phi1[i]).exp() / (nd.beta[i] * nd.beta[i]))
            }
        })
        .collect();
    let w1 = node_derivative(w, h, cc);
    let dg0 = (w1 * 0.5 - w[cc] * (jc.b2 / jc.b1)) * (1.0 / (jc.b1 * jc.b1));
    pv_integral(&g, dg0, h, cc)
}

/// 𝒥₃ split as in the limiting-absorption argument: a PV part carrying
/// ∫w / β², plus two regular corrections from φ₁ − 1 and φ₁⁻² − 1.
pub fn compute_j3_split(sol: &HomogeneousSolution, w: &[Complex64]) -> Complex64 {
    let nd = &sol.nodes;
    let h = nd.delta;
    let cc = nd.center;
    let jc = nd.jet_c;
    let n = nd.len();
    let wint = quad::cumulative(w, h, cc);
    let wm1: Vec<Complex64> = (0..n).map(|i| w[i] * sol.ln_phi1[i].exp_m1()).collect();
    let wint1 = quad::cumulative(&wm1, h, cc);
    // III: PV ∫ W / β²
    let g: Vec<Complex64> = (0..n)
        .map(|i| if i == cc { w[cc] / (jc.b1 * jc.b1) } else { wint[i] * (nd.u(i) / (nd.beta[i] * nd.beta[i])) })
        .collect();
    let w1 = node_derivative(w, h, cc);
    let dg0 = (w1 * 0.5 - w[cc] * (jc.b2 / jc.b1)) * (1.0 / (jc.b1 * jc.b1));
    let iii = pv_integral(&g, dg0, h, cc);
    // I: ∫ (∫ w(φ₁ − 1)) / (β²φ₁²); II: ∫ (∫ w)(φ₁⁻² − 1)/β²
    let reg: Vec<Complex64> = (0..n)
        .map(|i| {
            if i == cc {
                c(0.0)
            } else {
                let b2 = nd.beta[i] * nd.beta[i];
                let e = (-2.0 * sol.ln_phi1[i]).exp();
                wint1[i] * (e / b2) + wint[i] * ((-2.0 * sol.ln_phi1[i]).exp_m1() / b2)
            }
        })
        .collect();
    iii + quad::trapz(&reg, h)
}

pub fn compute_j4(p: &ShearProfile, y_c: f64, w_at_yc: Complex64) -> Complex64 {
    let b1 = p.b_and_b1(y_c).1;
    w_at_yc * (PI / (b1 * b1))
}

/// 𝒟^± = ∫ (φ^±)⁻² dy on ε-resolving nodes.
pub fn compute_wronskian(p: &ShearProfile, k: f64, y_c: f64, eps: f64, sign: f64) -> Result<Complex64> {
    let nodes = rayleigh::refined_nodes(p, y_c, eps, 1)?;
    let sol = rayleigh::solve_phi1_on(p, k, nodes, MarchOptions::accurate(k))?;
    let phi2 = rayleigh::solve_phi2(&sol, eps, sign)?;
    Ok(wronskian_from(&sol, &phi2))
}

pub fn wronskian_from(sol: &HomogeneousSolution, phi2: &rayleigh::Phi2) -> Complex64 {
    let parts = rayleigh::phi_pm_parts(sol, phi2);
    let f: Vec<Complex64> = parts.iter().zip(&sol.ln_phi1).map(|(pp, l)| (pp * pp).inv() * (-2.0 * l).exp()).collect();
    quad::trapz(&f, sol.nodes.delta)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub s: f64,
    pub k: f64,
    pub y_c: f64,
    pub j1: f64,
    pub j2: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityReport {
    pub delta_min: f64,
    pub wronskian_min_modulus: f64,
    pub eigenvalue_free: bool,
    pub rows: Vec<SpectrumRow>,
}

pub const DELTA_THRESHOLD: f64 = 1e-3;
pub const WRONSKIAN_THRESHOLD: f64 = 1e-6;

/// Sweep (s, k, y′): δ_min = min (𝒥₁² + 𝒥₂²)/k² and the smallest |𝒟^±| on the ε-scan.
pub fn check_spectrum(p: &ShearProfile, k_max: u32, s_grid: &[f64], y_grid: &[f64]) -> Result<StabilityReport> {
    let mut tasks = Vec::new();
    for &s in s_grid {
        for k in 1..=k_max {
            for &y in y_grid {
                tasks.push((s, k as f64, y));
            }
        }
    }
    let profiles: Vec<ShearProfile> = s_grid.iter().map(|&s| p.evolve_heat(s)).collect::<Result<_>>()?;
    let out: Vec<Result<(SpectrumRow, f64)>> = tasks
        .par_iter()
        .map(|&(s, k, y)| {
            let si = s_grid.iter().position(|&v| v == s).unwrap_or(0);
            let pr = &profiles[si];
            let j = compute_j(pr, k, y)?;
            let mut wmin = f64::INFINITY;
            for f in [0.1, 0.05, 0.025] {
                for sign in [1.0, -1.0] {
                    let d = compute_wronskian(pr, k, y, f / k, sign)?;
                    wmin = wmin.min(d.norm());
                }
            }
            Ok((SpectrumRow { s, k, y_c: y, j1: j.j1, j2: j.j2 }, wmin))
        })
        .collect();
    let mut rows = Vec::new();
    let mut delta_min = f64::INFINITY;
    let mut wmin = f64::INFINITY;
    for r in out {
        let (row, w) = r?;
        delta_min = delta_min.min((row.j1 * row.j1 + row.j2 * row.j2) / (row.k * row.k));
        wmin = wmin.min(w);
        rows.push(row);
    }
    Ok(StabilityReport {
        delta_min,
        wronskian_min_modulus: wmin,
        eigenvalue_free: delta_min > DELTA_THRESHOLD && wmin > WRONSKIAN_THRESHOLD,
        rows,
    })
}
