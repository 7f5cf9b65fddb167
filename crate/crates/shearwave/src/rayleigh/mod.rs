//! Homogeneous Rayleigh solutions φ₁ and φ₂^± about a critical layer y′.
//!
//! φ₁ solves (β²φ₁′)′ = k²β²φ₁ with β = b − b(y′), φ₁(y′) = 1, φ₁′(y′) = 0. It is
//! stored as ln φ₁ together with F = φ₁′/φ₁, which stays bounded by |k|.

pub mod inhom;
pub mod repr;

pub use inhom::{limiting_absorption, solve_inhomogeneous, InhomogeneousSolution, LimitSolution};
pub use repr::{evolve_euler_representation, step_linear_euler};

use crate::error::{Error, Result};
use crate::profile::{Jet, ShearProfile};
use crate::quad;
use crate::{c, Complex64};

/// Largest admissible ε for a given wavenumber.
pub fn eps0(k: f64) -> f64 {
    (0.1 / k.abs()).min(1.0)
}

/// Uniform nodes y′ + jδ inside [−L, L], with β and b′ sampled on them.
#[derive(Clone, Debug)]
pub struct Centered {
    pub y_c: f64,
    pub delta: f64,
    /// Index of the node sitting at y′.
    pub center: usize,
    pub y: Vec<f64>,
    pub beta: Vec<f64>,
    pub b1: Vec<f64>,
    pub jet_c: Jet,
}

impl Centered {
    pub fn new(p: &ShearProfile, y_c: f64, delta: f64) -> Result<Self> {
        let l = p.grid.half_width;
        if !(y_c >= -l && y_c <= l) {
            return Err(Error::OutOfRange { value: y_c, lo: -l, hi: l });
        }
        if !(delta > 0.0) {
            return Err(Error::Invalid("node spacing must be positive".into()));
        }
        let left = ((y_c + l) / delta + 1e-9).floor() as usize;
        let right = ((l - y_c) / delta + 1e-9).floor() as usize;
        let n = left + right + 1;
        let jet_c = p.jet(y_c);
        let mut y = Vec::with_capacity(n);
        let mut beta = Vec::with_capacity(n);
        let mut b1 = Vec::with_capacity(n);
        for j in 0..n {
            let yy = y_c + (j as f64 - left as f64) * delta;
            let (b, d) = p.b_and_b1(yy);
            y.push(yy);
            beta.push(if j == left { 0.0 } else { b - jet_c.b });
            b1.push(d);
        }
        Ok(Self { y_c, delta, center: left, y, beta, b1, jet_c })
    }

    /// Nodes equal to the profile grid, centered at grid point `i`.
    pub fn aligned(p: &ShearProfile, i: usize) -> Self {
        let jet_c = p.jet_at(i);
        let beta = p.b.iter().map(|b| b - jet_c.b).collect();
        Self { y_c: p.grid.y(i), delta: p.grid.h, center: i, y: p.grid.points(), beta, b1: p.b1.clone(), jet_c }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn u(&self, j: usize) -> f64 {
        (j as f64 - self.center as f64) * self.delta
    }

    pub fn jets(&self, p: &ShearProfile) -> Vec<Jet> {
        self.y.iter().map(|&y| p.jet(y)).collect()
    }
}

/// Step control for the φ₁ march.
#[derive(Clone, Copy, Debug)]
pub struct MarchOptions {
    pub max_step: f64,
}

impl MarchOptions {
    pub fn accurate(k: f64) -> Self {
        Self { max_step: 0.004 / k.abs().max(1.0) }
    }

    pub fn fast(k: f64) -> Self {
        Self { max_step: 0.02 / k.abs().max(1.0) }
    }
}

#[derive(Clone, Debug)]
pub struct HomogeneousSolution {
    pub k: f64,
    pub nodes: Centered,
    pub ln_phi1: Vec<f64>,
    /// F = φ₁′/φ₁.
    pub f: Vec<f64>,
}

impl HomogeneousSolution {
    pub fn phi1(&self) -> Vec<f64> {
        self.ln_phi1.iter().map(|l| l.exp()).collect()
    }

    pub fn dphi1(&self) -> Vec<f64> {
        self.ln_phi1.iter().zip(&self.f).map(|(l, f)| f * l.exp()).collect()
    }
}

/// Taylor coefficients of φ₁ in u = y − y′ (a₀ = 1, a₁ = 0).
pub fn series_coeffs(jet: &Jet, k: f64, order: usize) -> Vec<f64> {
    let c1 = jet.b1;
    let cj = [jet.b2 / 2.0, jet.b3 / 6.0, jet.b4 / 24.0, jet.b5 / 120.0];
    // β = c1 u P(u), P = 1 + r1 u + ...; ρ = P².
    let mut pcoef = vec![0.0; order + 1];
    pcoef[0] = 1.0;
    for (j, cv) in cj.iter().enumerate() {
        if j < order {
            pcoef[j + 1] = cv / c1;
        }
    }
    let mut rho = vec![0.0; order + 1];
    for i in 0..=order {
        for j in 0..=order - i {
            rho[i + j] += pcoef[i] * pcoef[j];
        }
    }
    let k2 = k * k;
    let mut a = vec![0.0; order + 1];
    a[0] = 1.0;
    for m in 2..=order {
        let mut s = 0.0;
        for n in 0..=m - 2 {
            s += k2 * rho[m - 2 - n] * a[n];
        }
        for n in 0..m {
            s -= (m + 1) as f64 * rho[m - n] * n as f64 * a[n];
        }
        a[m] = s / ((m + 1) as f64 * m as f64);
    }
    a
}

fn series_eval(a: &[f64], u: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut d = 0.0;
    for (n, &an) in a.iter().enumerate().rev() {
        v = v * u + an;
        if n > 0 {
            d = d * u + n as f64 * an;
        }
    }
    (v, d)
}

/// φ₁ on the profile grid nodes, centered at y_c.
pub fn solve_phi1(p: &ShearProfile, k: f64, y_c: f64) -> Result<HomogeneousSolution> {
    let nodes = Centered::new(p, y_c, p.grid.h)?;
    solve_phi1_on(p, k, nodes, MarchOptions::accurate(k))
}

pub fn solve_phi1_on(p: &ShearProfile, k: f64, nodes: Centered, opts: MarchOptions) -> Result<HomogeneousSolution> {
    if k == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    let coeffs = series_coeffs(&nodes.jet_c, k, 16);
    let (ln_phi1, f) = march(p, k, &nodes, &coeffs, opts.max_step);
    if ln_phi1.iter().chain(&f).any(|v| !v.is_finite()) {
        return Err(Error::Invalid("non-finite value in the phi1 march".into()));
    }
    Ok(HomogeneousSolution { k, nodes, ln_phi1, f })
}

fn march(p: &ShearProfile, k: f64, nodes: &Centered, a: &[f64], max_step: f64) -> (Vec<f64>, Vec<f64>) {
    let n = nodes.len();
    let c = nodes.center;
    let yc = nodes.y_c;
    let bc = nodes.jet_c.b;
    let k2 = k * k;
    let rs = (3.0 * nodes.delta).min(0.5 / k.abs());
    let mut lnp = vec![0.0; n];
    let mut ff = vec![0.0; n];
    let rhs = |y: f64, f: f64| -> f64 {
        let (b, d) = p.b_and_b1(y);
        k2 - f * f - 2.0 * d * f / (b - bc)
    };
    for dir in [1.0f64, -1.0] {
        let (v0, d0) = series_eval(a, dir * rs);
        let mut pos = yc + dir * rs;
        let mut lv = v0.ln();
        let mut fv = d0 / v0;
        let mut j = c;
        loop {
            let next = if dir > 0.0 {
                if j + 1 >= n {
                    break;
                }
                j + 1
            } else {
                if j == 0 {
                    break;
                }
                j - 1
            };
            j = next;
            let u = nodes.u(j);
            if u.abs() <= rs {
                let (v, d) = series_eval(a, u);
                lnp[j] = v.ln();
                ff[j] = d / v;
                continue;
            }
            let target = nodes.y[j];
            let span = target - pos;
            let local = max_step.min(0.25 * (pos - yc).abs());
            let m = (span.abs() / local).ceil().max(1.0) as usize;
            let dt = span / m as f64;
            for _ in 0..m {
                let k1 = rhs(pos, fv);
                let k2v = rhs(pos + 0.5 * dt, fv + 0.5 * dt * k1);
                let k3 = rhs(pos + 0.5 * dt, fv + 0.5 * dt * k2v);
                let k4 = rhs(pos + dt, fv + dt * k3);
                let l1 = fv;
                let l2 = fv + 0.5 * dt * k1;
                let l3 = fv + 0.5 * dt * k2v;
                let l4 = fv + dt * k3;
                lv += dt / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
                fv += dt / 6.0 * (k1 + 2.0 * k2v + 2.0 * k3 + k4);
                pos += dt;
            }
            pos = target;
            lnp[j] = lv;
            ff[j] = fv;
        }
    }
    lnp[c] = 0.0;
    ff[c] = 0.0;
    (lnp, ff)
}

/// Node spacing fine enough to resolve the ε-scale structure of φ₂ and 1/φ².
pub fn refined_nodes(p: &ShearProfile, y_c: f64, eps: f64, extra: usize) -> Result<Centered> {
    let h = p.grid.h;
    let b1c = p.b_and_b1(y_c).1;
    let target = if eps > 0.0 { eps / (8.0 * b1c) } else { h };
    let m = ((h / target).ceil() as usize).max(1) * extra.max(1);
    Centered::new(p, y_c, h / m as f64)
}

/// φ₂^± on the nodes of `sol`; `sign` is +1 or −1.
#[derive(Clone, Debug)]
pub struct Phi2 {
    pub eps: f64,
    pub sign: f64,
    pub values: Vec<Complex64>,
    pub iterations: usize,
}

/// Fixed-point iteration φ₂ = 1 + T₂[φ₂].
pub fn solve_phi2(sol: &HomogeneousSolution, eps: f64, sign: f64) -> Result<Phi2> {
    let n = sol.nodes.len();
    if eps == 0.0 {
        return Ok(Phi2 { eps, sign, values: vec![c(1.0); n], iterations: 0 });
    }
    let bound = eps0(sol.k);
    if !(eps > 0.0) || eps > bound {
        return Err(Error::EpsilonTooLarge { eps, bound });
    }
    let nd = &sol.nodes;
    let h = nd.delta;
    let cc = nd.center;
    let k2 = sol.k * sol.k;
    let se = sign * eps;
    // b′(F − iσεF/β) and 1/(β − iσε)²
    let inner_w: Vec<Complex64> = (0..n)
        .map(|j| {
            let fb = if j == cc { k2 / (3.0 * nd.jet_c.b1) } else { sol.f[j] / nd.beta[j] };
            Complex64::new(nd.b1[j] * sol.f[j], -nd.b1[j] * se * fb)
        })
        .collect();
    let outer_w: Vec<Complex64> = nd.beta.iter().map(|&b| (Complex64::new(b, -se)).powi(-2)).collect();
    let e2: Vec<f64> = sol.ln_phi1.iter().map(|l| 2.0 * l).collect();
    let pref = Complex64::new(0.0, -2.0 * se);
    let mut g = vec![c(1.0); n];
    let mut prev = f64::INFINITY;
    for it in 1..=200 {
        let q: Vec<Complex64> = inner_w.iter().zip(&g).map(|(a, b)| a * b).collect();
        let s = quad::cumulative_scaled(&q, &e2, h, cc);
        let o: Vec<Complex64> = s.iter().zip(&outer_w).map(|(a, b)| a * b).collect();
        let t = quad::cumulative(&o, h, cc);
        let next: Vec<Complex64> = t.iter().map(|v| c(1.0) + pref * v).collect();
        let diff = next.iter().zip(&g).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        g = next;
        if !diff.is_finite() || (it > 3 && diff > 0.95 * prev) && diff > 1e-10 {
            return Err(Error::EpsilonTooLarge { eps, bound });
        }
        if diff <= 1e-10 {
            return Ok(Phi2 { eps, sign, values: g, iterations: it });
        }
        prev = diff;
    }
    Err(Error::EpsilonTooLarge { eps, bound })
}

/// φ^± = (β ∓ iε)φ₁φ₂^± in log-magnitude form: returns (ln φ₁, (β ∓ iε)φ₂).
pub fn phi_pm_parts(sol: &HomogeneousSolution, phi2: &Phi2) -> Vec<Complex64> {
    sol.nodes.beta.iter().zip(&phi2.values).map(|(&b, g)| Complex64::new(b, -phi2.sign * phi2.eps) * g).collect()
}

fn nested_log_derivative(sol: &HomogeneousSolution, q: &[f64], scale: f64) -> Vec<f64> {
    let nd = &sol.nodes;
    let h = nd.delta;
    let cc = nd.center;
    let e2: Vec<f64> = sol.ln_phi1.iter().map(|l| 2.0 * l).collect();
    let s = quad::cumulative_scaled(q, &e2, h, cc);
    let o: Vec<f64> = s.iter().zip(&nd.beta).map(|(v, b)| if *b == 0.0 { 0.0 } else { v / (b * b) }).collect();
    quad::cumulative(&o, h, cc).iter().map(|v| scale * v).collect()
}

/// ∂_Gφ₁/φ₁ with ∂_G = ∂_y + ∂_{y′}, from the nested-integral representation.
pub fn good_derivative_ratio(p: &ShearProfile, sol: &HomogeneousSolution) -> Vec<f64> {
    let nd = &sol.nodes;
    let jets = nd.jets(p);
    let b1c = nd.jet_c.b1;
    let q: Vec<f64> = (0..nd.len())
        .map(|j| (jets[j].b2 * nd.beta[j] - (nd.b1[j] - b1c) * nd.b1[j]) * sol.f[j])
        .collect();
    nested_log_derivative(sol, &q, -2.0)
}

pub fn good_derivative_phi1(p: &ShearProfile, sol: &HomogeneousSolution) -> Vec<f64> {
    good_derivative_ratio(p, sol).iter().zip(&sol.ln_phi1).map(|(r, l)| r * l.exp()).collect()
}

/// ∂_sφ₁/φ₁ under the heat flow ḃ = νb″.
pub fn time_derivative_ratio(p: &ShearProfile, sol: &HomogeneousSolution) -> Vec<f64> {
    let nd = &sol.nodes;
    let jets = nd.jets(p);
    let b2c = nd.jet_c.b2;
    let q: Vec<f64> = (0..nd.len())
        .map(|j| (jets[j].b3 * nd.beta[j] - (jets[j].b2 - b2c) * nd.b1[j]) * sol.f[j])
        .collect();
    nested_log_derivative(sol, &q, -2.0 * p.nu)
}

pub fn time_derivative_phi1(p: &ShearProfile, sol: &HomogeneousSolution) -> Vec<f64> {
    time_derivative_ratio(p, sol).iter().zip(&sol.ln_phi1).map(|(r, l)| r * l.exp()).collect()
}

/// Rows (y, φ₁, ∂_yφ₁, F, Re φ₂, Im φ₂) restricted to the profile grid.
pub fn solution_table(sol: &HomogeneousSolution, phi2: Option<&Phi2>) -> Vec<[f64; 6]> {
    (0..sol.nodes.len())
        .map(|j| {
            let e = sol.ln_phi1[j].exp();
            let g = phi2.map(|p| p.values[j]).unwrap_or(c(1.0));
            [sol.nodes.y[j], e, sol.f[j] * e, sol.f[j], g.re, g.im]
        })
        .collect()
}
