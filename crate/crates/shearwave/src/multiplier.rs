//! The ghost multiplier A_k(t, η) and its arctan kernels in physical space.
//!
//! Fourier convention on the v-line: f̂(η) = ∫ f(v) e^{−iηv} dv.

use crate::field::ModeField;
use crate::profile::ShearProfile;
use crate::quad;
use crate::{Complex64, I};
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};

pub const DEFAULT_C0: f64 = 0.01;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MultiplierSpec {
    pub k: f64,
    pub t: f64,
    pub nu: f64,
    pub c0: f64,
}

impl MultiplierSpec {
    pub fn new(k: f64, t: f64, nu: f64) -> Self {
        Self { k, t, nu, c0: DEFAULT_C0 }
    }

    /// ν^{1/3}|k|^{2/3}
    pub fn visc_scale(&self) -> f64 {
        self.nu.cbrt() * self.k.abs().powf(2.0 / 3.0)
    }

    /// e^{c₀ν^{1/3}t} ln(e + |k|)
    pub fn envelope(&self) -> f64 {
        (self.c0 * self.nu.cbrt() * self.t).exp() * (E + self.k.abs()).ln()
    }
}

/// Å_k(t, η) = arctan((η − kt)/k) + arctan(ν^{1/3}|k|^{2/3}(η − kt)/k) + π + 1.
pub fn eval_a_ring(spec: &MultiplierSpec, eta: f64) -> f64 {
    let x = (eta - spec.k * spec.t) / spec.k;
    x.atan() + (spec.visc_scale() * x).atan() + PI + 1.0
}

pub fn eval_a(spec: &MultiplierSpec, eta: f64) -> f64 {
    spec.envelope() * eval_a_ring(spec, eta)
}

/// ∂_tÅ_k at fixed η.
pub fn da_ring_dt(spec: &MultiplierSpec, eta: f64) -> f64 {
    let x = (eta - spec.k * spec.t) / spec.k;
    let a = spec.visc_scale();
    -(1.0 / (1.0 + x * x) + a / (1.0 + a * a * x * x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArctanKind {
    /// arctan((η − kt)/k)
    Plain,
    /// arctan(ν^{1/3}|k|^{2/3}(η − kt)/k)
    Viscous,
}

pub fn arctan_symbol(spec: &MultiplierSpec, which: ArctanKind, eta: f64) -> f64 {
    let x = (eta - spec.k * spec.t) / spec.k;
    match which {
        ArctanKind::Plain => x.atan(),
        ArctanKind::Viscous => (spec.visc_scale() * x).atan(),
    }
}

/// Result of a spectral application, with the taper diagnostic.
#[derive(Clone, Debug)]
pub struct Applied {
    pub field: ModeField,
    /// ‖f − taper·f‖ / ‖f‖
    pub taper_residual: f64,
    pub warning: Option<String>,
}

fn taper(n: usize) -> Vec<f64> {
    let m = ((n as f64) * 0.1).round() as usize;
    (0..n)
        .map(|i| {
            let d = i.min(n - 1 - i);
            if d >= m || m == 0 {
                1.0
            } else {
                0.5 - 0.5 * (PI * d as f64 / m as f64).cos()
            }
        })
        .collect()
}

/// Multiply by a real symbol σ(η) in Fourier space (tapered, zero-padded DFT).
pub fn apply_symbol(f: &ModeField, symbol: impl Fn(f64) -> f64) -> Applied {
    apply_symbol_with(f, symbol, true)
}

/// As `apply_symbol` without the edge taper.
pub fn apply_symbol_untapered(f: &ModeField, symbol: impl Fn(f64) -> f64) -> ModeField {
    apply_symbol_with(f, symbol, false).field
}

fn apply_symbol_with(f: &ModeField, symbol: impl Fn(f64) -> f64, tapered_edges: bool) -> Applied {
    let n = f.len();
    let tp = if tapered_edges { taper(n) } else { vec![1.0; n] };
    let tapered: Vec<Complex64> = f.values.iter().zip(&tp).map(|(v, w)| v * *w).collect();
    let fnorm = f.norm();
    let taper_residual = if fnorm > 0.0 { ModeField::new(f.start, f.spacing, tapered.clone()).sub(f).norm() / fnorm } else { 0.0 };
    let m = (2 * n).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    buf[..n].copy_from_slice(&tapered);
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    let h = f.spacing;
    for (j, z) in buf.iter_mut().enumerate() {
        let jj = if j <= m / 2 { j as f64 } else { j as f64 - m as f64 };
        let eta = 2.0 * PI * jj / (m as f64 * h);
        // the window starts at f.start; a shift only adds a phase, which cancels
        *z *= symbol(eta) / m as f64;
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    let field = ModeField::new(f.start, f.spacing, buf[..n].to_vec());
    let warning = (taper_residual > 1e-6).then(|| format!("taper residual {taper_residual:.3e} exceeds 1e-6"));
    Applied { field, taper_residual, warning }
}

/// A_k(t, ∂_v)f.
pub fn apply_a_fourier(spec: &MultiplierSpec, f: &ModeField) -> Applied {
    apply_symbol(f, |eta| eval_a(spec, eta))
}

/// The arctan component of Å alone, applied spectrally.
pub fn apply_arctan_fourier(spec: &MultiplierSpec, which: ArctanKind, f: &ModeField) -> Applied {
    apply_symbol(f, |eta| arctan_symbol(spec, which, eta))
}

fn kernel_rate(spec: &MultiplierSpec, which: ArctanKind) -> f64 {
    match which {
        ArctanKind::Plain => spec.k.abs(),
        ArctanKind::Viscous => spec.k.abs() / spec.visc_scale(),
    }
}

/// PV convolution with (i sgn k / 2) e^{−λ|u|} e^{iktu} / u, λ = |k| or |k|^{1/3}ν^{−1/3}.
///
/// Pairs u and −u so the integrand is regular at 0, then applies the trapezoid rule
/// with the endpoint correction for the kink of e^{−λu} at u = 0.
pub fn apply_arctan_kernel_physical(spec: &MultiplierSpec, f: &ModeField, which: ArctanKind) -> ModeField {
    let n = f.len();
    let h = f.spacing;
    let lam = kernel_rate(spec, which);
    let kt = spec.k * spec.t;
    let fp = quad::deriv(&f.values, h);
    let jmax = ((40.0 / (lam * h)).ceil() as usize).min(n);
    let decay: Vec<f64> = (0..=jmax).map(|j| (-lam * j as f64 * h).exp()).collect();
    let rot: Vec<Complex64> = (0..=jmax).map(|j| (I * (kt * j as f64 * h)).exp()).collect();
    let pref = I * (spec.k.signum() * 0.5);
    let vals = (0..n)
        .map(|i| {
            let a0 = I * kt * f.values[i] - fp[i];
            let q0 = a0 * 2.0;
            let mut acc = q0 * 0.5 + q0 * (-lam * h / 12.0);
            for j in 1..=jmax {
                let fa = if i >= j { f.values[i - j] } else { Complex64::new(0.0, 0.0) };
                let fb = if i + j < n { f.values[i + j] } else { Complex64::new(0.0, 0.0) };
                // A(u) − A(−u) with A(u) = e^{iktu} f(v − u)
                let diff = rot[j] * fa - rot[j].conj() * fb;
                acc += diff * (decay[j] / (j as f64 * h));
            }
            pref * acc * h
        })
        .collect();
    ModeField::new(f.start, f.spacing, vals)
}

/// a(v) = b′(b⁻¹(v)) on the nodes of a v-field.
pub fn slope_on_v(profile: &ShearProfile, f: &ModeField) -> Vec<f64> {
    let n = profile.grid.n;
    let (lo, hi) = (profile.b[0], profile.b[n - 1]);
    (0..f.len())
        .map(|i| {
            let v = f.coord(i);
            if v <= lo {
                profile.c_minus
            } else if v >= hi {
                profile.c_plus
            } else {
                profile.invert(v).map(|(_, d)| 1.0 / d).unwrap_or(1.0)
            }
        })
        .collect()
}

/// [(b′∘b⁻¹)², Å_k(t, ∂_v)](∂_v − ikt)f and its norm ratio to ‖f‖.
///
/// Only the two arctan parts of Å contribute; each is a convolution whose
/// commutator with multiplication by a² has the regular kernel
/// K(v − v′)(a(v)² − a(v′)²). Splitting (∂_v − ikt)f into its two pieces gives
/// four kernels in total.
pub fn commutator_b_a(spec: &MultiplierSpec, profile: &ShearProfile, f: &ModeField) -> (ModeField, f64) {
    let n = f.len();
    let h = f.spacing;
    let a = slope_on_v(profile, f);
    let a2: Vec<f64> = a.iter().map(|x| x * x).collect();
    let da2 = quad::deriv(&a2, h);
    let fp = quad::deriv(&f.values, h);
    let kt = spec.k * spec.t;
    let pieces = [fp.clone(), f.values.iter().map(|z| -I * kt * z).collect::<Vec<_>>()];
    let pref = I * (spec.k.signum() * 0.5);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for which in [ArctanKind::Plain, ArctanKind::Viscous] {
        let lam = kernel_rate(spec, which);
        let jmax = ((40.0 / (lam * h)).ceil() as usize).min(n);
        for g in &pieces {
            for i in 0..n {
                // u = v − v′; the divided difference of a² is regular at u = 0
                let mut acc = g[i] * (da2[i] * (1.0 - lam * h / 6.0));
                for j in 1..=jmax {
                    let u = j as f64 * h;
                    let e = (-lam * u).exp();
                    if i >= j {
                        let dd = (a2[i] - a2[i - j]) / u;
                        acc += (I * (kt * u)).exp() * g[i - j] * (e * dd);
                    }
                    if i + j < n {
                        let dd = (a2[i] - a2[i + j]) / (-u);
                        acc += (-I * (kt * u)).exp() * g[i + j] * (e * dd);
                    }
                }
                out[i] += pref * acc * h;
            }
        }
    }
    let field = ModeField::new(f.start, f.spacing, out);
    let fnorm = f.norm();
    let ratio = if fnorm > 0.0 { field.norm() / fnorm } else { 0.0 };
    (field, ratio)
}
