//! Background shear profiles b(s, y), their heat-flow evolution and validation.

use crate::error::{Error, Result};
use crate::grid::YGrid;
use crate::quad;
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// How a profile is specified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileSpec {
    Couette,
    /// b''(y) = a e^{-y^2}, b'(-inf) = 1, b(0) = 0.
    GaussBump { a: f64 },
    /// b(y) = y + a w tanh(y / w).
    TanhPerturbed { a: f64, w: f64 },
    /// Samples of b on the grid; derivatives by finite differences.
    Samples { b: Vec<f64> },
}

impl ProfileSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileSpec::Couette => "couette",
            ProfileSpec::GaussBump { .. } => "gauss_bump",
            ProfileSpec::TanhPerturbed { .. } => "tanh_perturbed",
            ProfileSpec::Samples { .. } => "samples",
        }
    }
}

/// Local values of b and its derivatives at one point.
#[derive(Clone, Copy, Debug, Default)]
pub struct Jet {
    pub b: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShearProfile {
    pub grid: YGrid,
    pub spec: ProfileSpec,
    pub s: f64,
    pub nu: f64,
    pub b: Vec<f64>,
    pub b1: Vec<f64>,
    pub b2: Vec<f64>,
    pub b3: Vec<f64>,
    pub b4: Vec<f64>,
    pub b5: Vec<f64>,
    pub c_m: f64,
    pub c_minus: f64,
    pub c_plus: f64,
}

/// Assumption checks on a profile.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub monotone: bool,
    pub b1_min: f64,
    pub b1_max: f64,
    pub c_m: f64,
    pub c_minus_edge: f64,
    pub c_plus_edge: f64,
    pub b2_l1: f64,
    pub b2_w11: f64,
    pub b2_h3: f64,
    pub weighted_b2_h1: f64,
    /// Share of the weighted H^1 mass sitting in |y| > L/2.
    pub weighted_tail_fraction: f64,
    pub decay_ok: bool,
    pub pass: bool,
    pub spectral: String,
}

pub fn make_profile(spec: ProfileSpec, grid: YGrid, nu: f64) -> Result<ShearProfile> {
    let ys = grid.points();
    let n = grid.n;
    let (b, b1, b2, b3, b4, b5, cm, cp) = match &spec {
        ProfileSpec::Couette => (
            ys.clone(),
            vec![1.0; n],
            vec![0.0; n],
            vec![0.0; n],
            vec![0.0; n],
            vec![0.0; n],
            1.0,
            1.0,
        ),
        ProfileSpec::GaussBump { a } => {
            let a = *a;
            let g: Vec<f64> = ys.iter().map(|y| (-y * y).exp()).collect();
            let b = ys
                .iter()
                .zip(&g)
                .map(|(&y, &e)| (1.0 + 0.5 * a * SQRT_PI) * y + 0.5 * a * SQRT_PI * y * libm::erf(y) + 0.5 * a * (e - 1.0))
                .collect();
            let b1 = ys.iter().map(|&y| 1.0 + 0.5 * a * SQRT_PI * (libm::erf(y) + 1.0)).collect();
            let b2 = g.iter().map(|e| a * e).collect();
            let b3 = ys.iter().zip(&g).map(|(y, e)| -2.0 * a * y * e).collect();
            let b4 = ys.iter().zip(&g).map(|(y, e)| a * (4.0 * y * y - 2.0) * e).collect();
            let b5 = ys.iter().zip(&g).map(|(y, e)| a * (12.0 * y - 8.0 * y.powi(3)) * e).collect();
            (b, b1, b2, b3, b4, b5, 1.0, 1.0 + a * SQRT_PI)
        }
        ProfileSpec::TanhPerturbed { a, w } => {
            let (a, w) = (*a, *w);
            if !(w > 0.0) {
                return Err(Error::Invalid("tanh_perturbed needs w > 0".into()));
            }
            let t: Vec<f64> = ys.iter().map(|y| (y / w).tanh()).collect();
            let s: Vec<f64> = t.iter().map(|t| 1.0 - t * t).collect();
            let b = ys.iter().zip(&t).map(|(y, t)| y + a * w * t).collect();
            let b1 = s.iter().map(|s| 1.0 + a * s).collect();
            let b2 = s.iter().zip(&t).map(|(s, t)| -2.0 * a / w * s * t).collect();
            let b3 = s.iter().zip(&t).map(|(s, t)| -2.0 * a / (w * w) * (s * s - 2.0 * s * t * t)).collect();
            let b3v: &Vec<f64> = &b3;
            let b4 = quad::deriv(b3v, grid.h);
            let b5 = quad::deriv(&b4, grid.h);
            (b, b1, b2, b3, b4, b5, 1.0, 1.0)
        }
        ProfileSpec::Samples { b } => {
            if b.len() != n {
                return Err(Error::Invalid(format!("expected {n} samples, got {}", b.len())));
            }
            if let Some(i) = b.iter().position(|v| !v.is_finite()) {
                return Err(Error::NanSample { index: i });
            }
            let b1 = quad::deriv(b, grid.h);
            let b2 = quad::deriv(&b1, grid.h);
            let b3 = quad::deriv(&b2, grid.h);
            let b4 = quad::deriv(&b3, grid.h);
            let b5 = quad::deriv(&b4, grid.h);
            let (cm, cp) = (b1[0], b1[n - 1]);
            (b.clone(), b1, b2, b3, b4, b5, cm, cp)
        }
    };
    for (i, v) in b.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NanSample { index: i });
        }
    }
    for i in 0..n - 1 {
        if b[i + 1] <= b[i] {
            return Err(Error::MonotonicityViolated { index: i + 1 });
        }
    }
    if let Some(i) = b1.iter().position(|&v| v <= 0.0) {
        return Err(Error::MonotonicityViolated { index: i });
    }
    let mut p = ShearProfile { grid, spec, s: 0.0, nu, b, b1, b2, b3, b4, b5, c_m: 0.0, c_minus: cm, c_plus: cp };
    p.c_m = p.b1_min().min(1.0 / p.b1_max());
    Ok(p)
}

impl ShearProfile {
    pub fn b1_min(&self) -> f64 {
        self.b1.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn b1_max(&self) -> f64 {
        self.b1.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs_b(&self) -> f64 {
        self.b.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_couette_like(&self) -> bool {
        self.b2.iter().all(|&v| v == 0.0)
    }

    /// b and b' at an arbitrary point (quintic Hermite; linear extension outside).
    #[inline]
    pub fn b_and_b1(&self, y: f64) -> (f64, f64) {
        let g = &self.grid;
        let n = g.n;
        if y < -g.half_width {
            return (self.b[0] + self.c_minus * (y + g.half_width), self.c_minus);
        }
        if y > g.half_width {
            return (self.b[n - 1] + self.c_plus * (y - g.half_width), self.c_plus);
        }
        let (i, t) = g.locate(y);
        let (v, _) = quad::hermite5(self.b[i], self.b1[i], self.b2[i], self.b[i + 1], self.b1[i + 1], self.b2[i + 1], t, g.h);
        let (d, _) = quad::hermite5(self.b1[i], self.b2[i], self.b3[i], self.b1[i + 1], self.b2[i + 1], self.b3[i + 1], t, g.h);
        (v, d)
    }

    /// All stored derivatives at an arbitrary point inside the grid.
    pub fn jet(&self, y: f64) -> Jet {
        let g = &self.grid;
        let y = y.clamp(-g.half_width, g.half_width);
        let (i, t) = g.locate(y);
        if t == 0.0 || t == 1.0 {
            let j = if t == 0.0 { i } else { i + 1 };
            return self.jet_at(j);
        }
        let (b, b1) = self.b_and_b1(y);
        let (b2, b3) = quad::hermite5(self.b2[i], self.b3[i], self.b4[i], self.b2[i + 1], self.b3[i + 1], self.b4[i + 1], t, g.h);
        let b4 = quad::hermite3(self.b4[i], self.b5[i], self.b4[i + 1], self.b5[i + 1], t, g.h);
        let b5 = self.b5[i] * (1.0 - t) + self.b5[i + 1] * t;
        Jet { b, b1, b2, b3, b4, b5 }
    }

    pub fn jet_at(&self, i: usize) -> Jet {
        Jet { b: self.b[i], b1: self.b1[i], b2: self.b2[i], b3: self.b3[i], b4: self.b4[i], b5: self.b5[i] }
    }

    /// Profile at time s + dt under b_t = nu b_yy.
    pub fn evolve_heat(&self, dt: f64) -> Result<ShearProfile> {
        if dt < 0.0 || dt.is_nan() {
            return Err(Error::NegativeTime(dt));
        }
        let tau = self.nu * dt;
        let mut out = self.clone();
        out.s = self.s + dt;
        if tau == 0.0 || self.is_couette_like() {
            return Ok(out);
        }
        let h = self.grid.h;
        let b2 = gaussian_smooth(&self.b2, h, tau);
        let b3 = gaussian_smooth(&self.b3, h, tau);
        let b4 = quad::deriv(&b3, h);
        let b5 = quad::deriv(&b4, h);
        let mut b1 = quad::cumulative_hermite(&b2, &b3, h, 0);
        for v in b1.iter_mut() {
            *v += self.b1[0];
        }
        let c = self.grid.center();
        let b = quad::cumulative_hermite(&b1, &b2, h, c);
        out.b = b;
        out.b1 = b1;
        out.b2 = b2;
        out.b3 = b3;
        out.b4 = b4;
        out.b5 = b5;
        Ok(out)
    }

    /// y with b(y) = v, and (b^{-1})'(v) = 1/b'(y).
    pub fn invert(&self, v: f64) -> Result<(f64, f64)> {
        let n = self.grid.n;
        let (lo, hi) = (self.b[0], self.b[n - 1]);
        if !(v >= lo && v <= hi) {
            return Err(Error::OutOfRange { value: v, lo, hi });
        }
        let i = self.b.partition_point(|&x| x <= v).clamp(1, n - 1) - 1;
        let (ya, yb) = (self.grid.y(i), self.grid.y(i + 1));
        let (mut a, mut c) = (ya, yb);
        let mut y = ya + (v - self.b[i]) / (self.b[i + 1] - self.b[i]) * self.grid.h;
        for _ in 0..60 {
            let (bv, d) = self.b_and_b1(y);
            let r = bv - v;
            if r == 0.0 {
                break;
            }
            if r > 0.0 {
                c = y;
            } else {
                a = y;
            }
            let mut next = y - r / d;
            if !(next >= a && next <= c) {
                next = 0.5 * (a + c);
            }
            if (next - y).abs() < 1e-15 * (1.0 + y.abs()) {
                y = next;
                break;
            }
            y = next;
        }
        let (_, d) = self.b_and_b1(y);
        Ok((y, 1.0 / d))
    }

    pub fn validate_assumptions(&self) -> AssumptionReport {
        let h = self.grid.h;
        let n = self.grid.n;
        let monotone = self.b.windows(2).all(|w| w[1] > w[0]) && self.b1.iter().all(|&v| v > 0.0);
        let abs = |v: &[f64]| quad::trapz(&v.iter().map(|x| x.abs()).collect::<Vec<_>>(), h);
        let sq = |v: &[f64]| quad::trapz(&v.iter().map(|x| x * x).collect::<Vec<_>>(), h);
        let b2_l1 = abs(&self.b2);
        let b2_w11 = b2_l1 + abs(&self.b3);
        let b2_h3 = (sq(&self.b2) + sq(&self.b3) + sq(&self.b4) + sq(&self.b5)).sqrt();
        let ys = self.grid.points();
        let wgt: Vec<f64> = ys.iter().zip(&self.b2).map(|(y, v)| (1.0 + y * y).powf(0.25) * v).collect();
        let dw = quad::deriv(&wgt, h);
        let dens: Vec<f64> = wgt.iter().zip(&dw).map(|(a, b)| a * a + b * b).collect();
        let total = quad::trapz(&dens, h);
        let q = n / 4;
        let inner = quad::trapz(&dens[q..n - q], h);
        let tail = if total > 0.0 { ((total - inner) / total).max(0.0) } else { 0.0 };
        let decay_ok = tail < 1e-6 && self.b2[0].abs() < 1e-8 && self.b2[n - 1].abs() < 1e-8;
        let (b1_min, b1_max) = (self.b1_min(), self.b1_max());
        let c_m = b1_min.min(1.0 / b1_max);
        AssumptionReport {
            monotone,
            b1_min,
            b1_max,
            c_m,
            c_minus_edge: self.b1[0],
            c_plus_edge: self.b1[n - 1],
            b2_l1,
            b2_w11,
            b2_h3,
            weighted_b2_h1: total.sqrt(),
            weighted_tail_fraction: tail,
            decay_ok,
            pass: monotone && c_m > 0.0 && decay_ok,
            spectral: "see spectral_functionals".into(),
        }
    }

    /// CSV with columns y, b, b1, b2, b3.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("y,b,b1,b2,b3\n");
        for i in 0..self.grid.n {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                crate::fmt17(self.grid.y(i)),
                crate::fmt17(self.b[i]),
                crate::fmt17(self.b1[i]),
                crate::fmt17(self.b2[i]),
                crate::fmt17(self.b3[i])
            ));
        }
        s
    }
}

/// Convolution with the heat kernel of variance 2 tau, done spectrally with zero padding.
pub fn gaussian_smooth(f: &[f64], h: f64, tau: f64) -> Vec<f64> {
    let n = f.len();
    let m = (2 * n).next_power_of_two();
    let mut buf: Vec<Complex64> = (0..m).map(|i| Complex64::new(if i < n { f[i] } else { 0.0 }, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    for (j, v) in buf.iter_mut().enumerate() {
        let jj = if j <= m / 2 { j as f64 } else { j as f64 - m as f64 };
        let xi = 2.0 * PI * jj / (m as f64 * h);
        *v *= (-tau * xi * xi).exp() / m as f64;
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    buf[..n].iter().map(|c| c.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump() -> ShearProfile {
        make_profile(ProfileSpec::GaussBump { a: 1.0 }, YGrid::standard(), 1e-3).unwrap()
    }

    #[test]
    fn gauss_bump_closed_forms() {
        let p = bump();
        assert!((p.c_minus - 1.0).abs() < 1e-15);
        assert!((p.c_plus - (1.0 + SQRT_PI)).abs() < 1e-15);
        assert!((p.b1_min() - 1.0).abs() < 1e-12);
        let c = p.grid.center();
        assert_eq!(p.b[c], 0.0);
        let h = p.grid.h;
        for i in 1..p.grid.n - 1 {
            let fd = (p.b[i + 1] - p.b[i - 1]) / (2.0 * h);
            assert!((fd - p.b1[i]).abs() < 10.0 * h * h);
        }
    }

    #[test]
    fn heat_flow_matches_gaussian_closed_form() {
        let p = bump();
        let tau: f64 = 0.05;
        let q = p.evolve_heat(tau / p.nu).unwrap();
        let w = 1.0 + 4.0 * tau;
        for i in (0..p.grid.n).step_by(7) {
            let y = p.grid.y(i);
            let exact = (-y * y / w).exp() / w.sqrt();
            assert!((q.b2[i] - exact).abs() < 1e-12, "{y}");
        }
        let l1 = |v: &[f64]| quad::trapz(&v.iter().map(|x| x.abs()).collect::<Vec<_>>(), p.grid.h);
        assert!((l1(&q.b2) - SQRT_PI).abs() < 1e-10);
        let c = p.grid.center();
        assert_eq!(q.b[c], 0.0);
        assert!((q.b1[p.grid.n - 1] - p.c_plus).abs() < 1e-9);
    }

    #[test]
    fn heat_semigroup() {
        let p = bump();
        let a = p.evolve_heat(20.0).unwrap().evolve_heat(30.0).unwrap();
        let b = p.evolve_heat(50.0).unwrap();
        let d = a.b.iter().zip(&b.b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        assert!(d < 1e-9, "{d}");
    }

    #[test]
    fn invert_round_trip() {
        let p = bump();
        let v = p.b_and_b1(1.0).0;
        let (y, dinv) = p.invert(v).unwrap();
        assert!((y - 1.0).abs() < 1e-10);
        assert!((dinv - 1.0 / p.b_and_b1(1.0).1).abs() < 1e-12);
        let top = p.b[p.grid.n - 1];
        assert!(matches!(p.invert(top + 1.0), Err(Error::OutOfRange { .. })));
        let c = make_profile(ProfileSpec::Couette, YGrid::standard(), 0.0).unwrap();
        assert!((c.invert(0.37).unwrap().0 - 0.37).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_monotone_and_nan() {
        let g = YGrid::new(5.0, 101).unwrap();
        let mut b: Vec<f64> = g.points().iter().map(|y| y - 1.1 * (-(y * y)).exp() * y).collect();
        match make_profile(ProfileSpec::Samples { b: b.clone() }, g, 0.0) {
            Err(Error::MonotonicityViolated { index }) => assert!(index > 0),
            other => panic!("{other:?}"),
        }
        b[3] = f64::NAN;
        assert!(matches!(make_profile(ProfileSpec::Samples { b }, g, 0.0), Err(Error::NanSample { index: 3 })));
    }

    #[test]
    fn validation_reports() {
        let c = make_profile(ProfileSpec::Couette, YGrid::standard(), 0.0).unwrap().validate_assumptions();
        assert!(c.pass && c.b2_l1 == 0.0 && c.b2_h3 == 0.0);
        let r = bump().validate_assumptions();
        assert!(r.pass);
        assert!((r.b2_l1 - SQRT_PI).abs() < 1e-10);
        let g = YGrid::standard();
        let b: Vec<f64> = g
            .points()
            .iter()
            .map(|&y| 5.0 * y + y.signum() * ((1.0 + y.abs()) * (1.0 + y.abs()).ln() - y.abs()))
            .collect();
        let slow = make_profile(ProfileSpec::Samples { b }, g, 0.0).unwrap().validate_assumptions();
        assert!(slow.monotone && !slow.decay_ok && !slow.pass);
    }
}
