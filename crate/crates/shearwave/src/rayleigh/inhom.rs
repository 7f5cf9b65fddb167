//! Inhomogeneous Rayleigh equation for ε > 0 and its limiting-absorption limit ε → 0⁺.

use super::{refined_nodes, solve_phi1_on, solve_phi2, Centered, HomogeneousSolution, MarchOptions};
use crate::error::{Error, Result};
use crate::field::ModeField;
use crate::functionals::{self, node_derivative};
use crate::profile::ShearProfile;
use crate::quad;
use crate::{c, Complex64, I};

#[derive(Clone, Debug)]
pub struct InhomogeneousSolution {
    pub k: f64,
    pub y_c: f64,
    pub eps: f64,
    pub sign: f64,
    /// Node coordinates (ε-resolving spacing).
    pub y: Vec<f64>,
    pub phi: Vec<Complex64>,
    pub mu: Complex64,
    pub wronskian: Complex64,
    /// Left and right assemblies over all nodes.
    pub left: Vec<Complex64>,
    pub right: Vec<Complex64>,
    pub center: usize,
}

impl InhomogeneousSolution {
    /// max |left − right| over |y − y′| ≤ window, relative to max |Φ|.
    pub fn assembly_mismatch(&self, window: f64) -> f64 {
        let peak = self.phi.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let mut d = 0.0f64;
        for i in 0..self.y.len() {
            if (self.y[i] - self.y_c).abs() <= window {
                d = d.max((self.left[i] - self.right[i]).norm());
            }
        }
        if peak > 0.0 {
            d / peak
        } else {
            d
        }
    }

    pub fn spacing(&self) -> f64 {
        if self.y.len() > 1 {
            self.y[1] - self.y[0]
        } else {
            0.0
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct InhomOptions {
    /// Extra refinement on top of the ε/(8b′) spacing.
    pub refine: usize,
}

impl Default for InhomOptions {
    fn default() -> Self {
        Self { refine: 1 }
    }
}

pub fn solve_inhomogeneous(
    p: &ShearProfile,
    k: f64,
    y_c: f64,
    eps: f64,
    sign: f64,
    w_in: &ModeField,
) -> Result<InhomogeneousSolution> {
    solve_inhomogeneous_with(p, k, y_c, eps, sign, w_in, InhomOptions::default())
}

pub fn solve_inhomogeneous_with(
    p: &ShearProfile,
    k: f64,
    y_c: f64,
    eps: f64,
    sign: f64,
    w_in: &ModeField,
    opts: InhomOptions,
) -> Result<InhomogeneousSolution> {
    if !(eps > 0.0) {
        return Err(Error::Invalid("solve_inhomogeneous needs eps > 0".into()));
    }
    let nodes = refined_nodes(p, y_c, eps, opts.refine)?;
    let sol = solve_phi1_on(p, k, nodes, MarchOptions::accurate(k))?;
    let phi2 = solve_phi2(&sol, eps, sign)?;
    let nd = &sol.nodes;
    let n = nd.len();
    let h = nd.delta;
    let cc = nd.center;
    let l = &sol.ln_phi1;
    // φ = P e^{ℓ}, P = (β ∓ iε)φ₂
    let pp = super::phi_pm_parts(&sol, &phi2);
    let w: Vec<Complex64> = nd.y.iter().map(|&y| w_in.sample(y)).collect();
    let wg: Vec<Complex64> = w.iter().zip(&phi2.values).map(|(a, b)| a * b).collect();
    // G e^{−ℓ}
    let gs = quad::cumulative_scaled(&wg, l, h, cc);
    let fi: Vec<Complex64> = gs.iter().zip(&pp).map(|(g, q)| g / (q * q)).collect();
    let fh: Vec<Complex64> = pp.iter().map(|q| (q * q).inv()).collect();
    let ml: Vec<f64> = l.iter().map(|v| -v).collect();
    let m2l: Vec<f64> = l.iter().map(|v| -2.0 * v).collect();
    let il = quad::cumulative_scaled(&fi, &ml, h, 0);
    let hl = quad::cumulative_scaled(&fh, &m2l, h, 0);
    let ir = quad::cumulative_scaled(&fi, &ml, h, n - 1);
    let hr = quad::cumulative_scaled(&fh, &m2l, h, n - 1);
    let ti: Vec<Complex64> = (0..n).map(|i| fi[i] * (-l[i]).exp()).collect();
    let th: Vec<Complex64> = (0..n).map(|i| fh[i] * (-2.0 * l[i]).exp()).collect();
    let num = functionals::slice_integral(&ti, h);
    let den = functionals::slice_integral(&th, h);
    if den.norm() < 1e-8 {
        return Err(Error::NearEigenvalue(den.norm()));
    }
    let mu = num / den;
    let mut left = vec![c(0.0); n];
    let mut right = vec![c(0.0); n];
    for i in 0..n {
        let e = (-l[i]).exp();
        left[i] = -pp[i] * il[i] + mu * pp[i] * hl[i] * e;
        right[i] = -pp[i] * ir[i] + mu * pp[i] * hr[i] * e;
    }
    let phi = (0..n).map(|i| if i <= cc { left[i] } else { right[i] }).collect();
    Ok(InhomogeneousSolution {
        k,
        y_c,
        eps,
        sign,
        y: nd.y.clone(),
        phi,
        mu,
        wronskian: den,
        left,
        right,
        center: cc,
    })
}

/// Φ^± and μ^± at ε = 0.
#[derive(Clone, Debug)]
pub struct LimitSolution {
    pub k: f64,
    pub y_c: f64,
    pub y: Vec<f64>,
    pub center: usize,
    pub phi_plus: Vec<Complex64>,
    pub phi_minus: Vec<Complex64>,
    pub mu_plus: Complex64,
    pub mu_minus: Complex64,
    /// One-sided values just left and right of y′ (for the continuity check).
    pub jump: f64,
}

/// Integral of (g / β²) e^{−mℓ} from the near end (−L or +L) to every node, returned
/// as the signed integral times e^{mℓ}. Near y′ the 1/u² and 1/u parts are removed
/// and integrated in closed form.
struct SingularIntegrand<'a> {
    sol: &'a HomogeneousSolution,
    g: &'a [Complex64],
    m: f64,
    s2: Complex64,
    s1: Complex64,
    r0: Complex64,
}

impl SingularIntegrand<'_> {
    fn value(&self, i: usize) -> Complex64 {
        let b = self.sol.nodes.beta[i];
        self.g[i] * ((-self.m * self.sol.ln_phi1[i]).exp() / (b * b))
    }

    fn regular(&self, i: usize) -> Complex64 {
        let u = self.sol.nodes.u(i);
        if i == self.sol.nodes.center {
            self.r0
        } else {
            self.value(i) - self.s2 / (u * u) - self.s1 / u
        }
    }

    /// ∫ from the outer end to each node on one side of y′ (dir = −1 left, +1 right), unscaled,
    /// valid for nodes strictly on that side.
    fn one_side(&self, dir: i32, near: f64) -> Vec<Complex64> {
        let nd = &self.sol.nodes;
        let n = nd.len();
        let cc = nd.center;
        let h = nd.delta;
        let mut out = vec![c(0.0); n];
        let gsc: Vec<Complex64> = (0..n)
            .map(|i| {
                let b = nd.beta[i];
                if i == cc {
                    c(0.0)
                } else {
                    self.g[i] / (b * b)
                }
            })
            .collect();
        let e: Vec<f64> = self.sol.ln_phi1.iter().map(|v| -self.m * v).collect();
        let ns = ((near / h).floor() as usize).max(4);
        if dir < 0 {
            if cc == 0 {
                return out;
            }
            let js = cc.saturating_sub(ns);
            let sc = quad::cumulative_scaled(&gsc[..=js], &e[..=js], h, 0);
            for i in 0..=js {
                out[i] = sc[i] * e[i].exp();
            }
            let base = out[js];
            let r: Vec<Complex64> = (js..=cc).map(|i| self.regular(i)).collect();
            let rc = quad::cumulative(&r, h, 0);
            let us = nd.u(js);
            for i in js + 1..cc {
                let u = nd.u(i);
                out[i] = base + rc[i - js] + self.s2 * (1.0 / us - 1.0 / u) + self.s1 * (u / us).ln();
            }
        } else {
            if cc == n - 1 {
                return out;
            }
            let js = (cc + ns).min(n - 1);
            let sc = quad::cumulative_scaled(&gsc[js..], &e[js..], h, n - 1 - js);
            for i in js..n {
                out[i] = sc[i - js] * e[i].exp();
            }
            let base = out[js];
            let r: Vec<Complex64> = (cc..=js).map(|i| self.regular(i)).collect();
            let rc = quad::cumulative(&r, h, js - cc);
            let us = nd.u(js);
            for i in cc + 1..js {
                let u = nd.u(i);
                // ∫_{L}^{y} = base − ∫_{y}^{y_s}
                out[i] = base + rc[i - cc] - self.s2 * (1.0 / u - 1.0 / us) - self.s1 * (us / u).ln();
            }
        }
        out
    }
}

/// Evaluate the ε = 0 limit directly, with μ^± = (𝒥₃ ± i𝒥₄)/(𝒥₁ ∓ i𝒥₂).
pub fn limiting_absorption(p: &ShearProfile, k: f64, y_c: f64, w_in: &ModeField) -> Result<LimitSolution> {
    let nodes = Centered::new(p, y_c, p.grid.h)?;
    let cd = functionals::center_data(p, k, nodes, MarchOptions::accurate(k))?;
    let sol = &cd.sol;
    let nd = &sol.nodes;
    let n = nd.len();
    let h = nd.delta;
    let cc = nd.center;
    let jc = nd.jet_c;
    let w: Vec<Complex64> = nd.y.iter().map(|&y| w_in.sample(y)).collect();
    let j3 = functionals::compute_j3_nodes(sol, &w);
    let j4 = w[cc] * (std::f64::consts::PI / (jc.b1 * jc.b1));
    let (j1, j2) = (cd.j.j1, cd.j.j2);
    let mu_plus = (j3 + I * j4) / Complex64::new(j1, -j2);
    let mu_minus = (j3 - I * j4) / Complex64::new(j1, j2);
    let d = j1.hypot(j2);
    if d < 1e-8 {
        return Err(Error::NearEigenvalue(d));
    }
    let c1 = jc.b1;
    let r1 = jc.b2 / (2.0 * jc.b1);
    let r2 = jc.b3 / (6.0 * jc.b1);
    let w1 = node_derivative(&w, h, cc);
    let gs = quad::cumulative_scaled(&w, &sol.ln_phi1, h, cc);
    let ones = vec![c(1.0); n];
    let near = 1.0f64.min(2.0 / k.abs());
    let hom = SingularIntegrand {
        sol,
        g: &ones,
        m: 2.0,
        s2: c(1.0 / (c1 * c1)),
        s1: c(-2.0 * r1 / (c1 * c1)),
        r0: c((3.0 * r1 * r1 - 2.0 * r2 - k * k / 3.0) / (c1 * c1)),
    };
    let inh = SingularIntegrand {
        sol,
        g: &gs,
        m: 1.0,
        s2: c(0.0),
        s1: w[cc] / (c1 * c1),
        r0: (w1 * 0.5 - w[cc] * (2.0 * r1)) / (c1 * c1),
    };
    let hl = hom.one_side(-1, near);
    let hr = hom.one_side(1, near);
    let il = inh.one_side(-1, near);
    let ir = inh.one_side(1, near);
    let assemble = |mu: Complex64| -> Vec<Complex64> {
        (0..n)
            .map(|i| {
                if i == cc {
                    return -mu / c1;
                }
                let phis = nd.beta[i] * sol.ln_phi1[i].exp();
                let (a, b) = if i < cc { (il[i], hl[i]) } else { (ir[i], hr[i]) };
                let v = -a * phis + mu * b * phis;
                if v.re.is_finite() && v.im.is_finite() {
                    v
                } else {
                    c(0.0)
                }
            })
            .collect()
    };
    let phi_plus = assemble(mu_plus);
    let phi_minus = assemble(mu_minus);
    let jump = if cc >= 2 && cc + 2 < n {
        // linear extrapolation from each side toward y′
        let lft = phi_plus[cc - 1] * 2.0 - phi_plus[cc - 2];
        let rgt = phi_plus[cc + 1] * 2.0 - phi_plus[cc + 2];
        (lft - rgt).norm()
    } else {
        0.0
    };
    Ok(LimitSolution { k, y_c, y: nd.y.clone(), center: cc, phi_plus, phi_minus, mu_plus, mu_minus, jump })
}

/// Kernel of the representation formula on the nodes of `sol`:
/// φ_s(y)∫_{−∞}^{y} φ_s⁻² for y < y′, −φ_s(y)∫_{y}^{∞} φ_s⁻² for y > y′, −1/b′(y′) at y′.
pub fn homogeneous_kernel(sol: &HomogeneousSolution) -> Vec<f64> {
    let nd = &sol.nodes;
    let n = nd.len();
    let cc = nd.center;
    let jc = nd.jet_c;
    let c1 = jc.b1;
    let r1 = jc.b2 / (2.0 * jc.b1);
    let r2 = jc.b3 / (6.0 * jc.b1);
    let k = sol.k;
    let ones = vec![c(1.0); n];
    let hom = SingularIntegrand {
        sol,
        g: &ones,
        m: 2.0,
        s2: c(1.0 / (c1 * c1)),
        s1: c(-2.0 * r1 / (c1 * c1)),
        r0: c((3.0 * r1 * r1 - 2.0 * r2 - k * k / 3.0) / (c1 * c1)),
    };
    let near = 1.0f64.min(2.0 / k.abs());
    let hl = hom.one_side(-1, near);
    let hr = hom.one_side(1, near);
    (0..n)
        .map(|i| {
            if i == cc {
                return -1.0 / c1;
            }
            let v = if i < cc { hl[i].re } else { hr[i].re };
            let r = nd.beta[i] * (sol.ln_phi1[i] + v.abs().ln()).exp() * v.signum();
            if r.is_finite() {
                r
            } else {
                0.0
            }
        })
        .collect()
}
