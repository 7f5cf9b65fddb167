//! Per-mode linearized Navier–Stokes around an evolving shear, the moving-frame
//! transform, and the norms tracked along semigroup runs.

use crate::error::{Error, Result};
use crate::field::ModeField;
use crate::multiplier::{self, MultiplierSpec};
use crate::poisson;
use crate::profile::ShearProfile;
use crate::quad;
use crate::waveop::WaveOperatorContext;
use crate::{fmt17, Complex64, I};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeState {
    pub k: f64,
    pub t: f64,
    pub nu: f64,
    pub omega: ModeField,
    pub psi: ModeField,
}

impl ModeState {
    pub fn new(k: f64, nu: f64, omega: ModeField) -> Result<Self> {
        if k == 0.0 {
            return Err(Error::ZeroWavenumber);
        }
        let psi = ModeField::new(omega.start, omega.spacing, poisson::inverse_laplacian(&omega.values, k, omega.spacing));
        Ok(Self { k, t: 0.0, nu, omega, psi })
    }

    /// max |Δ_kψ − ω| over interior nodes, with the Numerov stencil.
    pub fn poisson_residual(&self) -> f64 {
        let (h, k) = (self.omega.spacing, self.k);
        let (p, w) = (&self.psi.values, &self.omega.values);
        let q = h * h * k * k / 12.0;
        (1..p.len() - 1)
            .map(|i| {
                let lhs = p[i - 1] * (1.0 - q) + p[i + 1] * (1.0 - q) - p[i] * (2.0 + 10.0 * q);
                let rhs = (w[i - 1] + w[i] * 10.0 + w[i + 1]) * (h * h / 12.0);
                (lhs - rhs).norm() / (h * h)
            })
            .fold(0.0, f64::max)
    }

    pub fn omega_norm(&self) -> f64 {
        self.omega.norm()
    }

    /// ‖∇ω̃_k‖ = (‖∂_yω̃‖² + k²‖ω̃‖²)^{1/2}
    pub fn grad_omega_norm(&self) -> f64 {
        let dy = quad::deriv(&self.omega.values, self.omega.spacing);
        let a = quad::l2_norm(&dy, self.omega.spacing, |z: Complex64| z.norm_sqr());
        let b = self.k * self.omega_norm();
        a.hypot(b)
    }

    /// ‖∂_xψ‖_∞ = |k| max|ψ̃|, the vertical velocity u^{(2)}.
    pub fn ux2_sup(&self) -> f64 {
        self.k.abs() * self.psi.sup()
    }

    /// ‖|D_x|^{1/2}∂_xψ‖ = |k|^{3/2}‖ψ̃‖
    pub fn half_dx_psi(&self) -> f64 {
        self.k.abs().powf(1.5) * self.psi.norm()
    }

    /// ‖∂_{xy}ψ‖ = |k|‖∂_yψ̃‖
    pub fn dxy_psi(&self) -> f64 {
        let dy = quad::deriv(&self.psi.values, self.psi.spacing);
        self.k.abs() * quad::l2_norm(&dy, self.psi.spacing, |z: Complex64| z.norm_sqr())
    }

    /// ‖∂_yψ‖_∞, the horizontal velocity u^{(1)}.
    pub fn uy_sup(&self) -> f64 {
        quad::deriv(&self.psi.values, self.psi.spacing).iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Quadratic damping ramp on the outer `width` of each side.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Sponge {
    pub width: f64,
    pub strength: f64,
}

impl Sponge {
    pub fn standard(half_width: f64) -> Self {
        Self { width: 0.1 * half_width, strength: 1.0 }
    }

    pub fn profile(&self, p: &ShearProfile) -> Vec<f64> {
        let l = p.grid.half_width;
        p.grid
            .points()
            .iter()
            .map(|y| {
                let d = y.abs() - (l - self.width);
                if d > 0.0 {
                    self.strength * (d / self.width).powi(2)
                } else {
                    0.0
                }
            })
            .collect()
    }
}

/// −ik(bω − b″ψ) − σω
pub(crate) fn linear_rhs(p: &ShearProfile, k: f64, omega: &[Complex64], psi: &[Complex64], sponge: &[f64]) -> Vec<Complex64> {
    (0..omega.len())
        .map(|i| {
            let mut e = -I * k * (omega[i] * p.b[i] - psi[i] * p.b2[i]);
            if let Some(s) = sponge.get(i) {
                e -= omega[i] * *s;
            }
            e
        })
        .collect()
}

pub(crate) fn check_cfl(k: f64, bmax: f64, dt: f64) -> Result<()> {
    let c = dt * k.abs() * bmax;
    if !(dt > 0.0) || c > 0.5 * (1.0 + 1e-12) {
        return Err(Error::Cfl(format!("dt |k| max|b| = {c} exceeds 0.5")));
    }
    Ok(())
}

/// One IMEX step: Crank–Nicolson diffusion, Heun for transport and the nonlocal term.
/// `e0` is the explicit term at t; `explicit_next` evaluates it at t + dt.
pub(crate) fn imex_step(
    omega: &[Complex64],
    k: f64,
    nu: f64,
    dt: f64,
    h: f64,
    e0: &[Complex64],
    explicit_next: impl Fn(&[Complex64]) -> Vec<Complex64>,
) -> Vec<Complex64> {
    let a = 0.5 * nu * dt;
    let lap = poisson::apply_laplacian(omega, k, h);
    let base: Vec<Complex64> = (0..omega.len()).map(|i| omega[i] + lap[i] * a).collect();
    let pred_rhs: Vec<Complex64> = (0..omega.len()).map(|i| base[i] + e0[i] * dt).collect();
    let pred = poisson::solve_implicit_diffusion(&pred_rhs, a, k, h);
    let e1 = explicit_next(&pred);
    let rhs: Vec<Complex64> = (0..omega.len()).map(|i| base[i] + (e0[i] + e1[i]) * (0.5 * dt)).collect();
    poisson::solve_implicit_diffusion(&rhs, a, k, h)
}

/// Advance one mode by dt. The profile is `p` at time `state.t`; its state at
/// t + dt comes from the heat flow.
pub fn step_linear_ns(state: &ModeState, p: &ShearProfile, dt: f64) -> Result<ModeState> {
    let next = p.evolve_heat(dt)?;
    step_with_profiles(state, p, &next, dt, &[])
}

pub(crate) fn step_with_profiles(state: &ModeState, p: &ShearProfile, next: &ShearProfile, dt: f64, sponge: &[f64]) -> Result<ModeState> {
    check_cfl(state.k, p.max_abs_b().max(next.max_abs_b()), dt)?;
    let (k, h) = (state.k, state.omega.spacing);
    let e0 = linear_rhs(p, k, &state.omega.values, &state.psi.values, sponge);
    let w = imex_step(&state.omega.values, k, state.nu, dt, h, &e0, |om| {
        let psi = poisson::inverse_laplacian(om, k, h);
        linear_rhs(next, k, om, &psi, sponge)
    });
    if w.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Blowup(format!("linear step at t = {}", state.t)));
    }
    let psi = poisson::inverse_laplacian(&w, k, h);
    let start = state.omega.start;
    Ok(ModeState {
        k,
        t: state.t + dt,
        nu: state.nu,
        omega: ModeField::new(start, h, w),
        psi: ModeField::new(start, h, psi),
    })
}

/// Couette with viscosity: ω̂(t,η) = ω̂_in(η + kt) exp(−ν∫₀ᵗ k² + (η + kt − ks)² ds),
/// evaluated by FFT on the window of `w_in`.
pub fn couette_exact(k: f64, nu: f64, t: f64, w_in: &ModeField) -> ModeField {
    // ω = e^{−ikty} g, ĝ(ζ) = ω̂_in(ζ) exp(−ν(k²t + (ζ³ − (ζ − kt)³)/(3k)))
    let kt = k * t;
    let g = multiplier::apply_symbol_untapered(w_in, |z| (-nu * (k * k * t + (z.powi(3) - (z - kt).powi(3)) / (3.0 * k))).exp());
    let vals = g.values.iter().enumerate().map(|(i, v)| v * (-I * (kt * g.coord(i))).exp()).collect();
    ModeField::new(w_in.start, w_in.spacing, vals)
}

/// F̃_k(t, ·) on a uniform v-grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameField {
    pub k: f64,
    pub t: f64,
    pub f: ModeField,
}

/// F̃_k(t, v) with F̃_k(t, b(t,y)) e^{−iktb(t,y)} = 𝔻_{t,k}[ω̃_k](y), on v-spacing equal to h.
pub fn to_moving_frame(state: &ModeState, ctx: &WaveOperatorContext) -> Result<FrameField> {
    let p = &ctx.profile;
    let kt = state.k * state.t;
    let d = ctx.apply_d_phase(&state.omega, state.t)?;
    let demod: Vec<Complex64> = d.values.iter().zip(&p.b).map(|(v, b)| v * (I * (kt * b)).exp()).collect();
    let n = p.grid.n;
    let (lo, hi) = (p.b[0], p.b[n - 1]);
    let hv = p.grid.h;
    let m = ((hi - lo) / hv).floor() as usize + 1;
    let vals = (0..m)
        .map(|j| {
            let v = lo + j as f64 * hv;
            let (y, _) = p.invert(v.min(hi))?;
            let x = (y + p.grid.half_width) / p.grid.h;
            Ok(quad::lagrange3(&demod, x.clamp(0.0, (n - 1) as f64)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrameField { k: state.k, t: state.t, f: ModeField::new(lo, hv, vals) })
}

/// ‖A_k(t,∂_v)F̃‖² with the taper residual.
pub fn a_energy(frame: &FrameField, spec: &MultiplierSpec) -> (f64, f64) {
    let a = multiplier::apply_a_fourier(spec, &frame.f);
    (a.field.norm().powi(2), a.taper_residual)
}

/// ν‖A_k(t,∂_v)(∂_v − ikt)F̃‖²
pub fn a_dissipation(frame: &FrameField, spec: &MultiplierSpec) -> f64 {
    let kt = spec.k * spec.t;
    let a = multiplier::apply_symbol(&frame.f, |eta| multiplier::eval_a(spec, eta) * (eta - kt));
    spec.nu * a.field.norm().powi(2)
}

/// (Σ_k ln(e+|k|)² ‖f̃_k‖²)^{1/2}
pub fn measure_hlog_norm<'a>(modes: impl IntoIterator<Item = (f64, &'a ModeField)>) -> f64 {
    modes
        .into_iter()
        .map(|(k, f)| ((std::f64::consts::E + k.abs()).ln() * f.norm()).powi(2))
        .sum::<f64>()
        .sqrt()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemigroupOptions {
    pub dt: f64,
    /// Number of output intervals.
    pub n_out: usize,
    /// Ghost constant c₀; the A-energy is recorded when set.
    pub a_energy_c0: Option<f64>,
    pub sponge: Option<Sponge>,
    pub evolve_profile: bool,
    /// Stride of cached critical layers for the wave operator.
    pub waveop_stride: usize,
}

impl SemigroupOptions {
    pub fn new(dt: f64, n_out: usize) -> Self {
        Self { dt, n_out, a_energy_c0: None, sponge: None, evolve_profile: true, waveop_stride: 4 }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SemigroupRun {
    pub k: f64,
    pub nu: f64,
    pub t: Vec<f64>,
    pub omega: Vec<f64>,
    pub grad_omega: Vec<f64>,
    pub ux2_sup: Vec<f64>,
    pub half_dx_psi: Vec<f64>,
    pub dxy_psi: Vec<f64>,
    pub uy_sup: Vec<f64>,
    pub a_energy: Vec<f64>,
    pub a_dissipation: Vec<f64>,
    pub taper_residual: Vec<f64>,
    /// ∫‖∂_xψ‖²_∞ dt
    pub int_ux2_sq: f64,
    /// ∫‖∂_{xy}ψ‖² dt
    pub int_dxy_sq: f64,
    /// ∫‖∂_xω‖ dt
    pub int_dx_omega: f64,
    pub steps: usize,
}

impl SemigroupRun {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,omega_l2,grad_omega_l2,ux2_sup,half_dx_psi_l2,dxy_psi_l2,uy_sup,a_energy,a_dissipation\n");
        for i in 0..self.t.len() {
            let a = self.a_energy.get(i).copied().unwrap_or(f64::NAN);
            let d = self.a_dissipation.get(i).copied().unwrap_or(f64::NAN);
            let row = [self.t[i], self.omega[i], self.grad_omega[i], self.ux2_sup[i], self.half_dx_psi[i], self.dxy_psi[i], self.uy_sup[i], a, d];
            s.push_str(&row.iter().map(|x| fmt17(*x)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    /// sup_t e^{c₀ν^{1/3}t}‖ω(t)‖ / ‖ω(0)‖
    pub fn weighted_growth(&self, c0: f64) -> f64 {
        let w0 = self.omega[0];
        if w0 == 0.0 {
            return 0.0;
        }
        self.t.iter().zip(&self.omega).map(|(t, w)| (c0 * self.nu.cbrt() * t).exp() * w / w0).fold(0.0, f64::max)
    }

    /// Least-squares decay rate of ln‖ω‖ on [t_lo, t_hi].
    pub fn decay_rate(&self, t_lo: f64, t_hi: f64) -> f64 {
        fit_decay_rate(&self.t, &self.omega, t_lo, t_hi)
    }

    /// Largest c₁ with a(t) ≤ e^{−c₁(ν^{1/3}|k|^{2/3} + νk²)(t−s)} a(s) for all recorded s < t.
    pub fn fitted_c1(&self) -> f64 {
        let rate = self.nu.cbrt() * self.k.abs().powf(2.0 / 3.0) + self.nu * self.k * self.k;
        self.a_energy
            .windows(2)
            .zip(self.t.windows(2))
            .map(|(a, t)| -(a[1] / a[0]).ln() / (rate * (t[1] - t[0])))
            .fold(f64::INFINITY, f64::min)
    }

    /// ∫ν‖A(∂_v − ikt)F̃‖² dt by the trapezoid rule on the output cadence.
    pub fn integrated_dissipation(&self) -> f64 {
        self.t.windows(2).zip(self.a_dissipation.windows(2)).map(|(t, d)| 0.5 * (t[1] - t[0]) * (d[0] + d[1])).sum()
    }
}

/// −slope of the least-squares line through (t, ln y) on [t_lo, t_hi].
pub fn fit_decay_rate(t: &[f64], y: &[f64], t_lo: f64, t_hi: f64) -> f64 {
    let pts: Vec<(f64, f64)> = t.iter().zip(y).filter(|(t, y)| **t >= t_lo - 1e-12 && **t <= t_hi + 1e-12 && **y > 0.0).map(|(t, y)| (*t, y.ln())).collect();
    let n = pts.len() as f64;
    if n < 2.0 {
        return f64::NAN;
    }
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    -sxy / sxx
}

/// Run the linearized semigroup S(t, 0)g for one mode up to time `t_end`.
pub fn run_semigroup(g: &ModeField, k: f64, nu: f64, profile: &ShearProfile, t_end: f64, opts: &SemigroupOptions) -> Result<SemigroupRun> {
    if k == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    if t_end < 0.0 {
        return Err(Error::NegativeTime(t_end));
    }
    let n_out = opts.n_out.max(1);
    let per_out = ((t_end / n_out as f64) / opts.dt).ceil().max(1.0) as usize;
    let dt = t_end / (n_out * per_out) as f64;
    let mut p0 = profile.clone();
    p0.nu = nu;
    let sponge = opts.sponge.map(|s| s.profile(&p0)).unwrap_or_default();
    let omega0 = ModeField::on_grid(&p0.grid, p0.grid.points().iter().map(|&y| g.sample(y)).collect());
    let mut state = ModeState::new(k, nu, omega0)?;
    let mut run = SemigroupRun { k, nu, ..Default::default() };
    let mut cur = p0.clone();
    let record = |state: &ModeState, p: &ShearProfile, run: &mut SemigroupRun| -> Result<()> {
        run.t.push(state.t);
        run.omega.push(state.omega_norm());
        run.grad_omega.push(state.grad_omega_norm());
        run.ux2_sup.push(state.ux2_sup());
        run.half_dx_psi.push(state.half_dx_psi());
        run.dxy_psi.push(state.dxy_psi());
        run.uy_sup.push(state.uy_sup());
        if let Some(c0) = opts.a_energy_c0 {
            let ctx = WaveOperatorContext::with_stride(p, k, opts.waveop_stride, crate::rayleigh::MarchOptions::fast(k))?;
            let frame = to_moving_frame(state, &ctx)?;
            let spec = MultiplierSpec { k, t: state.t, nu, c0 };
            let (e, tr) = a_energy(&frame, &spec);
            run.a_energy.push(e);
            run.taper_residual.push(tr);
            run.a_dissipation.push(a_dissipation(&frame, &spec));
        }
        Ok(())
    };
    record(&state, &cur, &mut run)?;
    let integrands = |s: &ModeState| [s.ux2_sup().powi(2), s.dxy_psi().powi(2), k.abs() * s.omega_norm()];
    let mut prev = integrands(&state);
    for _ in 0..n_out {
        for _ in 0..per_out {
            let next = if opts.evolve_profile { p0.evolve_heat(state.t + dt)? } else { cur.clone() };
            state = step_with_profiles(&state, &cur, &next, dt, &sponge)?;
            cur = next;
            let now = integrands(&state);
            run.int_ux2_sq += 0.5 * dt * (prev[0] + now[0]);
            run.int_dxy_sq += 0.5 * dt * (prev[1] + now[1]);
            run.int_dx_omega += 0.5 * dt * (prev[2] + now[2]);
            prev = now;
            run.steps += 1;
        }
        record(&state, &cur, &mut run)?;
    }
    Ok(run)
}
