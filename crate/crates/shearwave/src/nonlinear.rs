//! Mode-truncated nonlinear perturbation solver on 𝕋 × [−L, L], the bootstrap
//! monitor, and the amplitude-threshold scan.

use crate::error::{Error, Result};
use crate::field::ModeField;
use crate::grid::YGrid;
use crate::linear::{self, Sponge};
use crate::poisson;
use crate::profile::ShearProfile;
use crate::quad;
use crate::{c, fmt17, Complex64, I};
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::E;
use std::sync::Arc;

pub const DEFAULT_MODES: usize = 16;

/// Perturbation (ω, ψ) with modes 0..=K stored; mode −k is the conjugate of mode k.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Field2D {
    pub grid: YGrid,
    pub t: f64,
    pub nu: f64,
    /// ω̃_k for k = 1..=K (index k − 1).
    pub omega: Vec<Vec<Complex64>>,
    /// ψ̃_k = Δ_k⁻¹ω̃_k.
    pub psi: Vec<Vec<Complex64>>,
    /// Zero mode of vorticity.
    pub omega0: Vec<f64>,
    /// Zero mode of horizontal velocity.
    pub u0: Vec<f64>,
}

impl Field2D {
    pub fn zeros(grid: YGrid, modes: usize, nu: f64) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); grid.n];
        Self { grid, t: 0.0, nu, omega: vec![z.clone(); modes], psi: vec![z; modes], omega0: vec![0.0; grid.n], u0: vec![0.0; grid.n] }
    }

    pub fn modes(&self) -> usize {
        self.omega.len()
    }

    /// Set nonzero mode k (1-based) and refresh its stream function.
    pub fn set_mode(&mut self, k: usize, omega: Vec<Complex64>) {
        self.psi[k - 1] = poisson::inverse_laplacian(&omega, k as f64, self.grid.h);
        self.omega[k - 1] = omega;
    }

    /// Set the zero mode of vorticity; u₀ = −∂_yψ₀ with ∂_yyψ₀ = ω₀.
    pub fn set_zero_mode(&mut self, omega0: Vec<f64>) {
        let w: Vec<Complex64> = omega0.iter().map(|v| c(*v)).collect();
        let psi0 = poisson::inverse_laplacian(&w, 0.0, self.grid.h);
        self.u0 = quad::deriv(&psi0, self.grid.h).iter().map(|z| -z.re).collect();
        self.omega0 = omega0;
    }

    /// ω_in = amp·e^{−y²}cos(x).
    pub fn canonical(grid: YGrid, modes: usize, nu: f64, amp: f64) -> Self {
        let mut f = Self::zeros(grid, modes.max(1), nu);
        let w = grid.points().iter().map(|y| c(0.5 * amp * (-y * y).exp())).collect();
        f.set_mode(1, w);
        f
    }

    pub fn mode_field(&self, k: usize) -> ModeField {
        ModeField::on_grid(&self.grid, self.omega[k - 1].clone())
    }

    /// ‖ω_≠‖_{H^{log}L²} = (Σ_{k≠0} ln(e+|k|)²‖ω̃_k‖²)^{1/2}, both signs of k.
    pub fn omega_hlog(&self) -> f64 {
        let fields: Vec<ModeField> = (1..=self.modes()).map(|k| self.mode_field(k)).collect();
        2f64.sqrt() * linear::measure_hlog_norm(fields.iter().enumerate().map(|(i, f)| ((i + 1) as f64, f)))
    }

    /// ‖u‖_{L²_{x,y}} over one period in x (2π Σ_k ‖ũ_k‖²)^{1/2}.
    pub fn velocity_l2(&self) -> f64 {
        let h = self.grid.h;
        let mut s = quad::l2_norm(&self.u0, h, |v: f64| v * v).powi(2);
        for k in 1..=self.modes() {
            let kk = k as f64;
            let psi = &self.psi[k - 1];
            let dy = quad::deriv(psi, h);
            let a = quad::l2_norm(&dy, h, |z: Complex64| z.norm_sqr()).powi(2);
            let b = kk * kk * quad::l2_norm(psi, h, |z: Complex64| z.norm_sqr()).powi(2);
            s += 2.0 * (a + b);
        }
        (2.0 * std::f64::consts::PI * s).sqrt()
    }

    fn is_finite(&self) -> bool {
        self.omega.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) && self.omega0.iter().chain(&self.u0).all(|v| v.is_finite())
    }
}

/// Physical-space transforms in x for one K.
struct XTransform {
    m: usize,
    inv: Arc<dyn Fft<f64>>,
    fwd: Arc<dyn Fft<f64>>,
}

impl XTransform {
    fn new(modes: usize) -> Self {
        // 2/3 rule: quadratic products of |k| ≤ K are exact on ≥ 3K + 1 points
        let m = (3 * modes + 1).next_power_of_two().max(4);
        let mut planner = FftPlanner::new();
        Self { m, inv: planner.plan_fft_inverse(m), fwd: planner.plan_fft_forward(m) }
    }

    /// Physical samples of Σ_{|k|≤K} f_k e^{ikx} from f_0 and f_1..f_K.
    fn synth(&self, f0: f64, fk: &[Complex64], buf: &mut [Complex64], scratch: &mut [Complex64]) {
        buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        buf[0] = c(f0);
        for (i, z) in fk.iter().enumerate() {
            buf[i + 1] = *z;
            buf[self.m - i - 1] = z.conj();
        }
        self.inv.process_with_scratch(buf, scratch);
    }

    fn scratch(&self) -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0); self.inv.get_inplace_scratch_len().max(self.fwd.get_inplace_scratch_len())]
    }
}

/// Nonlinear fluxes on one y-node: (u·∇ω)_k for k = 0..=K and (u·∇u^{(1)})₀.
#[derive(Clone)]
struct Flux {
    omega: Vec<Vec<Complex64>>,
    omega0: Vec<f64>,
    u0: Vec<f64>,
}

/// Physical L^∞ of the velocity, used in the advective limit.
fn fluxes(f: &Field2D, xt: &XTransform) -> (Flux, f64) {
    let n = f.grid.n;
    let h = f.grid.h;
    let kk = f.modes();
    let dyw: Vec<Vec<Complex64>> = f.omega.iter().map(|w| quad::deriv(w, h)).collect();
    let u1: Vec<Vec<Complex64>> = f.psi.iter().map(|p| quad::deriv(p, h).into_iter().map(|z| -z).collect()).collect();
    let dyw0 = quad::deriv(&f.omega0, h);
    let dyu0 = quad::deriv(&f.u0, h);
    let m = xt.m;
    let rows: Vec<(Vec<Complex64>, f64, f64, f64)> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![vec![Complex64::new(0.0, 0.0); m]; 6], vec![Complex64::new(0.0, 0.0); kk], vec![Complex64::new(0.0, 0.0); m], vec![Complex64::new(0.0, 0.0); m], xt.scratch()),
            |(bufs, col, p, q, sc), j| {
                // u^{(1)}, u^{(2)}, ∂_xω, ∂_yω, ∂_xu^{(1)}, ∂_yu^{(1)}
                let fill = |col: &mut Vec<Complex64>, g: &dyn Fn(usize) -> Complex64| (1..=kk).for_each(|k| col[k - 1] = g(k));
                fill(col, &|k| u1[k - 1][j]);
                xt.synth(f.u0[j], col, &mut bufs[0], sc);
                fill(col, &|k| I * (k as f64) * f.psi[k - 1][j]);
                xt.synth(0.0, col, &mut bufs[1], sc);
                fill(col, &|k| I * (k as f64) * f.omega[k - 1][j]);
                xt.synth(0.0, col, &mut bufs[2], sc);
                fill(col, &|k| dyw[k - 1][j]);
                xt.synth(dyw0[j], col, &mut bufs[3], sc);
                fill(col, &|k| I * (k as f64) * u1[k - 1][j]);
                xt.synth(0.0, col, &mut bufs[4], sc);
                // ∂_yu^{(1)}_k = −∂_yyψ_k = −(ω_k + k²ψ_k)
                fill(col, &|k| -(f.omega[k - 1][j] + f.psi[k - 1][j] * ((k * k) as f64)));
                xt.synth(dyu0[j], col, &mut bufs[5], sc);
                let mut umax = 0.0f64;
                for i in 0..m {
                    let (u, v) = (bufs[0][i].re, bufs[1][i].re);
                    umax = umax.max(u.hypot(v));
                    p[i] = c(u * bufs[2][i].re + v * bufs[3][i].re);
                    q[i] = c(u * bufs[4][i].re + v * bufs[5][i].re);
                }
                xt.fwd.process_with_scratch(p, sc);
                xt.fwd.process_with_scratch(q, sc);
                let s = 1.0 / m as f64;
                let pk: Vec<Complex64> = (1..=kk).map(|k| p[k] * s).collect();
                (pk, p[0].re * s, q[0].re * s, umax)
            },
        )
        .collect();
    let mut flux = Flux { omega: vec![vec![Complex64::new(0.0, 0.0); n]; kk], omega0: vec![0.0; n], u0: vec![0.0; n] };
    let mut umax = 0.0f64;
    for (j, (pk, p0, q0, um)) in rows.into_iter().enumerate() {
        for (row, v) in flux.omega.iter_mut().zip(pk) {
            row[j] = v;
        }
        flux.omega0[j] = p0;
        flux.u0[j] = q0;
        umax = umax.max(um);
    }
    (flux, umax)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonlinearOptions {
    pub dt: f64,
    pub sponge: Option<Sponge>,
    /// Drop 𝓝 and the zero-mode forcing (same discretization, linear dynamics).
    pub linear_only: bool,
    pub evolve_profile: bool,
    /// Record a snapshot every this many steps.
    pub record_every: usize,
}

impl NonlinearOptions {
    pub fn new(dt: f64) -> Self {
        Self { dt, sponge: None, linear_only: false, evolve_profile: true, record_every: 1 }
    }
}

struct Stepper {
    xt: XTransform,
    sponge: Vec<f64>,
    linear_only: bool,
}

/// Explicit part of each equation: linear transport/nonlocal terms minus fluxes.
struct Explicit {
    omega: Vec<Vec<Complex64>>,
    omega0: Vec<f64>,
    u0: Vec<f64>,
}

impl Stepper {
    fn explicit(&self, f: &Field2D, p: &ShearProfile) -> (Explicit, f64) {
        let n = f.grid.n;
        let (flux, umax) = if self.linear_only {
            (Flux { omega: vec![vec![Complex64::new(0.0, 0.0); n]; f.modes()], omega0: vec![0.0; n], u0: vec![0.0; n] }, 0.0)
        } else {
            fluxes(f, &self.xt)
        };
        let omega = (0..f.modes())
            .map(|i| {
                let k = (i + 1) as f64;
                let mut e = linear::linear_rhs(p, k, &f.omega[i], &f.psi[i], &self.sponge);
                e.iter_mut().zip(&flux.omega[i]).for_each(|(a, b)| *a -= b);
                e
            })
            .collect();
        let damp = |v: &[f64], fl: &[f64]| -> Vec<f64> { (0..n).map(|j| -fl[j] - self.sponge.get(j).copied().unwrap_or(0.0) * v[j]).collect() };
        let omega0 = damp(&f.omega0, &flux.omega0);
        let u0 = damp(&f.u0, &flux.u0);
        (Explicit { omega, omega0, u0 }, umax)
    }

    fn step(&self, f: &Field2D, p: &ShearProfile, next: &ShearProfile, dt: f64) -> Result<Field2D> {
        let (e0, umax) = self.explicit(f, p);
        let kmax = f.modes() as f64;
        linear::check_cfl(kmax, p.max_abs_b().max(next.max_abs_b()) + umax, dt)?;
        let h = f.grid.h;
        let nu = f.nu;
        // predictor
        let mut pred = f.clone();
        pred.t = f.t + dt;
        let a = 0.5 * nu * dt;
        let half = |w: &[Complex64], k: f64, e: &[Complex64], dt_e: f64| -> Vec<Complex64> {
            let lap = poisson::apply_laplacian(w, k, h);
            let rhs: Vec<Complex64> = (0..w.len()).map(|i| w[i] + lap[i] * a + e[i] * dt_e).collect();
            poisson::solve_implicit_diffusion(&rhs, a, k, h)
        };
        let to_c = |v: &[f64]| -> Vec<Complex64> { v.iter().map(|x| c(*x)).collect() };
        let to_r = |v: Vec<Complex64>| -> Vec<f64> { v.into_iter().map(|z| z.re).collect() };
        for i in 0..f.modes() {
            let w = half(&f.omega[i], (i + 1) as f64, &e0.omega[i], dt);
            pred.set_mode(i + 1, w);
        }
        pred.omega0 = to_r(half(&to_c(&f.omega0), 0.0, &to_c(&e0.omega0), dt));
        pred.u0 = to_r(half(&to_c(&f.u0), 0.0, &to_c(&e0.u0), dt));
        let (e1, _) = self.explicit(&pred, next);
        let mut out = pred;
        let avg = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> { x.iter().zip(y).map(|(a, b)| (a + b) * 0.5).collect() };
        for i in 0..f.modes() {
            let e = avg(&e0.omega[i], &e1.omega[i]);
            let w = half(&f.omega[i], (i + 1) as f64, &e, dt);
            out.set_mode(i + 1, w);
        }
        let ravg = |x: &[f64], y: &[f64]| -> Vec<Complex64> { x.iter().zip(y).map(|(a, b)| c(0.5 * (a + b))).collect() };
        out.omega0 = to_r(half(&to_c(&f.omega0), 0.0, &ravg(&e0.omega0, &e1.omega0), dt));
        out.u0 = to_r(half(&to_c(&f.u0), 0.0, &ravg(&e0.u0, &e1.u0), dt));
        if !out.is_finite() {
            return Err(Error::Blowup(format!("nonlinear step at t = {}", f.t)));
        }
        Ok(out)
    }
}

/// One IMEX step of the perturbation system; `p` is the shear at time f.t.
pub fn step_nonlinear(f: &Field2D, p: &ShearProfile, dt: f64) -> Result<Field2D> {
    let next = p.evolve_heat(dt)?;
    let st = Stepper { xt: XTransform::new(f.modes()), sponge: Vec::new(), linear_only: false };
    st.step(f, p, &next, dt)
}

/// Scalars recorded at each snapshot; norms in the conventions of `BootstrapReport`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: f64,
    pub u0_l2: f64,
    pub u0_inf: f64,
    pub dy_omega0_l2: f64,
    pub omega_hlog: f64,
    pub grad_omega_hlog: f64,
    pub dx_omega_hlog: f64,
    pub omega_inf: f64,
    pub u2_inf: f64,
    pub half_u2_hlog_inf: f64,
    pub dx_u1_hlog: f64,
    pub u1_inf: f64,
}

/// Measure a snapshot of the nonzero-mode and zero-mode quantities.
pub fn snapshot(f: &Field2D) -> Snapshot {
    let h = f.grid.h;
    let l2 = |v: &[Complex64]| quad::l2_norm(v, h, |z: Complex64| z.norm_sqr());
    let sup = |v: &[Complex64]| v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let mut s = Snapshot { t: f.t, ..Default::default() };
    s.u0_l2 = quad::l2_norm(&f.u0, h, |v: f64| v * v);
    s.u0_inf = f.u0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    s.dy_omega0_l2 = quad::l2_norm(&quad::deriv(&f.omega0, h), h, |v: f64| v * v);
    let (mut w2, mut g2, mut dx2, mut hu2, mut du2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let xt = XTransform::new(f.modes());
    let mut wphys = vec![vec![Complex64::new(0.0, 0.0); f.modes()]; f.grid.n];
    let mut u1phys = wphys.clone();
    let mut u2phys = wphys.clone();
    for i in 0..f.modes() {
        let k = (i + 1) as f64;
        let lw = (E + k).ln().powi(2);
        let wn = l2(&f.omega[i]);
        let dy = quad::deriv(&f.omega[i], h);
        let u1: Vec<Complex64> = quad::deriv(&f.psi[i], h).into_iter().map(|z| -z).collect();
        // both signs of k contribute equally
        w2 += 2.0 * lw * wn * wn;
        g2 += 2.0 * lw * (l2(&dy).powi(2) + k * k * wn * wn);
        dx2 += 2.0 * lw * k * k * wn * wn;
        hu2 += 2.0 * lw * k * (k * sup(&f.psi[i])).powi(2);
        du2 += 2.0 * lw * k * k * l2(&u1).powi(2);
        for j in 0..f.grid.n {
            wphys[j][i] = f.omega[i][j];
            u1phys[j][i] = u1[j];
            u2phys[j][i] = I * k * f.psi[i][j];
        }
    }
    s.omega_hlog = w2.sqrt();
    s.grad_omega_hlog = g2.sqrt();
    s.dx_omega_hlog = dx2.sqrt();
    s.half_u2_hlog_inf = hu2.sqrt();
    s.dx_u1_hlog = du2.sqrt();
    let mut buf = vec![Complex64::new(0.0, 0.0); xt.m];
    let mut sc = xt.scratch();
    let mut phys_sup = |rows: &[Vec<Complex64>]| -> f64 {
        let mut m = 0.0f64;
        for r in rows {
            xt.synth(0.0, r, &mut buf, &mut sc);
            m = buf.iter().fold(m, |a, z| a.max(z.re.abs()));
        }
        m
    };
    s.omega_inf = phys_sup(&wphys);
    s.u1_inf = phys_sup(&u1phys);
    s.u2_inf = phys_sup(&u2phys);
    s
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonlinearRun {
    pub history: Vec<Snapshot>,
    pub final_state: Field2D,
    pub omega_in_hlog: f64,
    pub u_in_l2: f64,
    pub steps: usize,
    /// Set when the run stopped early; `final_state` is then the last finite state.
    pub aborted: Option<String>,
}

impl NonlinearRun {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,u0_l2,u0_inf,dy_omega0_l2,omega_hlog,grad_omega_hlog,dx_omega_hlog,omega_inf,u2_inf,half_u2_hlog_inf,dx_u1_hlog,u1_inf\n");
        for r in &self.history {
            let v = [r.t, r.u0_l2, r.u0_inf, r.dy_omega0_l2, r.omega_hlog, r.grad_omega_hlog, r.dx_omega_hlog, r.omega_inf, r.u2_inf, r.half_u2_hlog_inf, r.dx_u1_hlog, r.u1_inf];
            s.push_str(&v.iter().map(|x| fmt17(*x)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }
}

/// Integrate the perturbation system to `t_end`.
pub fn run_nonlinear(init: &Field2D, profile: &ShearProfile, t_end: f64, opts: &NonlinearOptions) -> Result<NonlinearRun> {
    if t_end < 0.0 {
        return Err(Error::NegativeTime(t_end));
    }
    let steps = (t_end / opts.dt).ceil().max(0.0) as usize;
    let dt = if steps > 0 { t_end / steps as f64 } else { 0.0 };
    let mut p0 = profile.clone();
    p0.nu = init.nu;
    let st = Stepper {
        xt: XTransform::new(init.modes()),
        sponge: opts.sponge.map(|s| s.profile(&p0)).unwrap_or_default(),
        linear_only: opts.linear_only,
    };
    let mut f = init.clone();
    let mut cur = p0.clone();
    let mut run = NonlinearRun { history: vec![snapshot(&f)], final_state: f.clone(), omega_in_hlog: f.omega_hlog(), u_in_l2: f.velocity_l2(), steps: 0, aborted: None };
    let every = opts.record_every.max(1);
    for i in 0..steps {
        let next = if opts.evolve_profile { p0.evolve_heat(f.t + dt)? } else { cur.clone() };
        match st.step(&f, &cur, &next, dt) {
            Ok(g) => f = g,
            Err(e @ Error::Blowup(_)) => {
                run.aborted = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
        cur = next;
        run.steps += 1;
        if (i + 1) % every == 0 || i + 1 == steps {
            run.history.push(snapshot(&f));
        }
    }
    run.final_state = f;
    Ok(run)
}

/// Distance between two states in H^{log}L² over all modes, zero mode included.
pub fn state_distance(a: &Field2D, b: &Field2D) -> f64 {
    let h = a.grid.h;
    let mut s = quad::l2_norm(&a.omega0.iter().zip(&b.omega0).map(|(x, y)| x - y).collect::<Vec<_>>(), h, |v: f64| v * v).powi(2);
    for i in 0..a.modes().min(b.modes()) {
        let d: Vec<Complex64> = a.omega[i].iter().zip(&b.omega[i]).map(|(x, y)| x - y).collect();
        s += 2.0 * ((E + (i + 1) as f64).ln() * quad::l2_norm(&d, h, |z: Complex64| z.norm_sqr())).powi(2);
    }
    s.sqrt()
}

pub const BOOTSTRAP_NAMES: [&str; 11] = [
    "sup_u0_l2",
    "sup_u0_linf",
    "dy_omega0_l2t_l2",
    "sup_weighted_omega_hlog",
    "weighted_grad_omega_l2t_hlog",
    "weighted_dx_omega_l1t_hlog",
    "weighted_omega_l2t_linf",
    "weighted_u2_l2t_linf",
    "weighted_half_u2_l2t_hlog_linf",
    "weighted_dx_u1_l2t_hlog",
    "sup_weighted_u1_linf",
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BootstrapReport {
    pub names: Vec<String>,
    pub values: Vec<f64>,
    /// 8C₁ times the right side of each inequality.
    pub bounds: Vec<f64>,
    pub pass: Vec<bool>,
    pub c1: f64,
    pub eps0: f64,
    pub beta: f64,
    pub nu: f64,
    pub c0: f64,
    pub horizon: f64,
    pub omega_in_hlog: f64,
}

impl BootstrapReport {
    pub fn all_pass(&self) -> bool {
        self.pass.iter().all(|p| *p)
    }
}

/// Evaluate the eleven bootstrap quantities along a run and compare each with 8C₁·(right side).
pub fn monitor_bootstrap(history: &[Snapshot], omega_in_hlog: f64, nu: f64, c0: f64, c1: f64, eps0: f64, beta: f64) -> BootstrapReport {
    let wgt = |t: f64| (c0 * nu.cbrt() * t).exp();
    let sup = |g: &dyn Fn(&Snapshot) -> f64| history.iter().map(g).fold(0.0f64, f64::max);
    let int = |g: &dyn Fn(&Snapshot) -> f64| history.windows(2).map(|w| 0.5 * (w[1].t - w[0].t) * (g(&w[0]) + g(&w[1]))).sum::<f64>();
    let values = vec![
        sup(&|s| s.u0_l2),
        sup(&|s| s.u0_inf),
        int(&|s| s.dy_omega0_l2.powi(2)).sqrt(),
        sup(&|s| wgt(s.t) * s.omega_hlog),
        int(&|s| (wgt(s.t) * s.grad_omega_hlog).powi(2)).sqrt(),
        int(&|s| wgt(s.t) * s.dx_omega_hlog),
        int(&|s| (wgt(s.t) * s.omega_inf).powi(2)).sqrt(),
        int(&|s| (wgt(s.t) * s.u2_inf).powi(2)).sqrt(),
        int(&|s| (wgt(s.t) * s.half_u2_hlog_inf).powi(2)).sqrt(),
        int(&|s| (wgt(s.t) * s.dx_u1_hlog).powi(2)).sqrt(),
        sup(&|s| wgt(s.t) * s.u1_inf),
    ];
    let small = eps0 * nu.powf(beta);
    let w = omega_in_hlog;
    let visc = nu.powf(-0.5) * w;
    let rhs = [small, small, visc, w, visc, visc, visc, w, small, w, w];
    let bounds: Vec<f64> = rhs.iter().map(|r| 8.0 * c1 * r).collect();
    let pass = values.iter().zip(&bounds).map(|(v, b)| v.is_finite() && v <= b).collect();
    BootstrapReport {
        names: BOOTSTRAP_NAMES.iter().map(|s| s.to_string()).collect(),
        values,
        bounds,
        pass,
        c1,
        eps0,
        beta,
        nu,
        c0,
        horizon: history.last().map(|s| s.t).unwrap_or(0.0),
        omega_in_hlog,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanOptions {
    pub modes: usize,
    pub grid: YGrid,
    /// dt = cfl / (K·max|b|)
    pub cfl: f64,
    pub c0: f64,
    /// Horizon in units of ν^{−1/3}.
    pub horizon: f64,
    pub sponge: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRow {
    pub beta: f64,
    pub eps0: f64,
    pub nu: f64,
    pub stable: bool,
    pub peak_ratio: f64,
}

/// Amplitude a with ‖a·e^{−y²}cos x‖_{H^{log}L²} = size.
pub fn canonical_amplitude(grid: YGrid, size: f64) -> f64 {
    let unit = Field2D::canonical(grid, 1, 0.0, 1.0).omega_hlog();
    size / unit
}

/// Classify (β, ε₀, ν) as stable when sup e^{c₀ν^{1/3}t}‖ω_≠‖_{H^{log}L²} stays within 8× its initial value.
pub fn scan_threshold(profile: &ShearProfile, betas: &[f64], eps0s: &[f64], nus: &[f64], opts: &ScanOptions) -> Result<Vec<ScanRow>> {
    let mut cases = Vec::new();
    for &beta in betas {
        for &eps0 in eps0s {
            for &nu in nus {
                cases.push((beta, eps0, nu));
            }
        }
    }
    let p = make_on(profile, opts.grid)?;
    cases
        .par_iter()
        .map(|&(beta, eps0, nu)| {
            let size = eps0 * nu.powf(beta);
            if size == 0.0 {
                return Ok(ScanRow { beta, eps0, nu, stable: true, peak_ratio: 0.0 });
            }
            let amp = canonical_amplitude(opts.grid, size);
            let init = Field2D::canonical(opts.grid, opts.modes, nu, amp);
            let t_end = opts.horizon * nu.powf(-1.0 / 3.0);
            let dt = opts.cfl / (opts.modes as f64 * p.max_abs_b());
            let mut no = NonlinearOptions::new(dt);
            no.sponge = opts.sponge.then(|| Sponge::standard(opts.grid.half_width));
            no.record_every = ((t_end / dt) / 200.0).ceil().max(1.0) as usize;
            let run = run_nonlinear(&init, &p, t_end, &no)?;
            let w0 = run.omega_in_hlog;
            let peak = run.history.iter().map(|s| (opts.c0 * nu.cbrt() * s.t).exp() * s.omega_hlog).fold(0.0f64, f64::max);
            let ratio = peak / w0;
            Ok(ScanRow { beta, eps0, nu, stable: run.aborted.is_none() && ratio <= 8.0, peak_ratio: ratio })
        })
        .collect()
}

/// Rows where a smaller ε₀ escaped while a larger one at the same (β, ν) stayed stable.
pub fn monotonicity_violations(rows: &[ScanRow]) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for a in rows {
        for b in rows {
            if a.beta == b.beta && a.nu == b.nu && a.eps0 < b.eps0 && !a.stable && b.stable {
                out.push((a.beta, a.eps0, a.nu));
            }
        }
    }
    out
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut s = String::from("beta,eps0,nu,verdict,peak_ratio\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", fmt17(r.beta), fmt17(r.eps0), fmt17(r.nu), if r.stable { "stable" } else { "escaped" }, fmt17(r.peak_ratio)));
    }
    s
}

fn make_on(profile: &ShearProfile, grid: YGrid) -> Result<ShearProfile> {
    if profile.grid == grid {
        return Ok(profile.clone());
    }
    crate::profile::make_profile(profile.spec.clone(), grid, profile.nu)
}
