//! Quadrature, finite differences and Hermite interpolation on uniform grids.

use std::ops::{Add, Mul, Sub};

/// Scalar type the quadrature helpers work over (`f64` and `Complex64`).
pub trait Scalar: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}
impl<T> Scalar for T where T: Copy + Default + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

pub fn trapz<T: Scalar>(f: &[T], h: f64) -> T {
    if f.len() < 2 {
        return T::default();
    }
    let mut acc = (f[0] + f[f.len() - 1]) * 0.5;
    for &v in &f[1..f.len() - 1] {
        acc = acc + v;
    }
    acc * h
}

/// Fourth-order integral of the samples over cell [i, i+1].
#[inline]
pub fn cell_integral<T: Scalar>(f: &[T], i: usize, h: f64) -> T {
    let n = f.len();
    let c = h / 24.0;
    if n < 4 {
        return (f[i] + f[i + 1]) * (0.5 * h);
    }
    if i >= 1 && i + 2 < n {
        (f[i] * 13.0 + f[i + 1] * 13.0 - f[i - 1] - f[i + 2]) * c
    } else if i == 0 {
        (f[0] * 9.0 + f[1] * 19.0 - f[2] * 5.0 + f[3]) * c
    } else {
        (f[i - 2] - f[i - 1] * 5.0 + f[i] * 19.0 + f[i + 1] * 9.0) * c
    }
}

/// Running integral from node `anchor` to every node (negative to the left).
pub fn cumulative<T: Scalar>(f: &[T], h: f64, anchor: usize) -> Vec<T> {
    let n = f.len();
    let mut out = vec![T::default(); n];
    for i in anchor..n.saturating_sub(1) {
        out[i + 1] = out[i] + cell_integral(f, i, h);
    }
    for i in (0..anchor).rev() {
        out[i] = out[i + 1] - cell_integral(f, i, h);
    }
    out
}

/// Running integral of f e^{e} from `anchor`, returned scaled by e^{-e_i}.
/// Keeps nested integrals of exponentially growing data in range.
pub fn cumulative_scaled<T: Scalar>(f: &[T], e: &[f64], h: f64, anchor: usize) -> Vec<T> {
    let n = f.len();
    let mut out = vec![T::default(); n];
    let cell = |i: usize, r: usize| -> T {
        let lo = if n < 4 { i } else { i.saturating_sub(1).min(n - 4) };
        let hi = if n < 4 { i + 2 } else { lo + 4 };
        let loc: Vec<T> = (lo..hi).map(|j| f[j] * (e[j] - e[r]).exp()).collect();
        cell_integral(&loc, i - lo, h)
    };
    for i in anchor..n.saturating_sub(1) {
        out[i + 1] = out[i] * (e[i] - e[i + 1]).exp() + cell(i, i + 1);
    }
    for i in (0..anchor).rev() {
        out[i] = out[i + 1] * (e[i + 1] - e[i]).exp() - cell(i, i);
    }
    out
}

/// Running integral anchored at `anchor`, built from values and derivatives
/// (corrected trapezoid, fifth order per cell).
pub fn cumulative_hermite(f: &[f64], df: &[f64], h: f64, anchor: usize) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    let cell = |i: usize| 0.5 * h * (f[i] + f[i + 1]) + h * h / 12.0 * (df[i] - df[i + 1]);
    for i in anchor..n - 1 {
        out[i + 1] = out[i] + cell(i);
    }
    for i in (0..anchor).rev() {
        out[i] = out[i + 1] - cell(i);
    }
    out
}

/// Fourth-order first derivative, one-sided at the two outermost nodes.
pub fn deriv<T: Scalar>(f: &[T], h: f64) -> Vec<T> {
    let n = f.len();
    assert!(n >= 5, "need at least 5 samples");
    let s = 1.0 / (12.0 * h);
    let mut d = vec![T::default(); n];
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * s;
    }
    d[0] = (f[1] * 48.0 + f[3] * 16.0 - f[0] * 25.0 - f[2] * 36.0 - f[4] * 3.0) * s;
    d[1] = (f[2] * 18.0 + f[4] - f[0] * 3.0 - f[1] * 10.0 - f[3] * 6.0) * s;
    d[n - 1] = (f[n - 1] * 25.0 + f[n - 3] * 36.0 + f[n - 5] * 3.0 - f[n - 2] * 48.0 - f[n - 4] * 16.0) * s;
    d[n - 2] = (f[n - 2] * 10.0 + f[n - 1] * 3.0 + f[n - 4] * 6.0 - f[n - 3] * 18.0 - f[n - 5]) * s;
    d
}

/// Second-order centered second derivative with zero values at the ends.
pub fn second_deriv<T: Scalar>(f: &[T], h: f64) -> Vec<T> {
    let n = f.len();
    let s = 1.0 / (h * h);
    let mut d = vec![T::default(); n];
    for i in 1..n - 1 {
        d[i] = (f[i - 1] + f[i + 1] - f[i] * 2.0) * s;
    }
    d
}

/// Quintic Hermite interpolation on one cell; returns value and derivative.
#[inline]
pub fn hermite5(f0: f64, d0: f64, s0: f64, f1: f64, d1: f64, s1: f64, t: f64, h: f64) -> (f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h3 = 0.5 * (t3 - 2.0 * t4 + t5);
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let g0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    let g1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    let g2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
    let g3 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
    let g4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    let g5 = -g0;
    let hh = h * h;
    let v = f0 * h0 + h * d0 * h1 + hh * s0 * h2 + hh * s1 * h3 + h * d1 * h4 + f1 * h5;
    let dv = (f0 * g0 + h * d0 * g1 + hh * s0 * g2 + hh * s1 * g3 + h * d1 * g4 + f1 * g5) / h;
    (v, dv)
}

/// Cubic Hermite interpolation on one cell.
#[inline]
pub fn hermite3(f0: f64, d0: f64, f1: f64, d1: f64, t: f64, h: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + t) * h * d0 + (3.0 * t2 - 2.0 * t3) * f1 + (t3 - t2) * h * d1
}

/// Cubic Lagrange interpolation of uniformly spaced samples at fractional index `x`.
pub fn lagrange3<T: Scalar>(f: &[T], x: f64) -> T {
    let n = f.len();
    if n == 1 {
        return f[0];
    }
    if n < 4 {
        let i = (x.floor().max(0.0) as usize).min(n - 2);
        let t = x - i as f64;
        return f[i] * (1.0 - t) + f[i + 1] * t;
    }
    let i = (x.floor().max(0.0) as usize).min(n - 2);
    let i0 = i.saturating_sub(1).min(n - 4);
    let t = x - i0 as f64;
    let w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    let w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    let w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    let w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    f[i0] * w0 + f[i0 + 1] * w1 + f[i0 + 2] * w2 + f[i0 + 3] * w3
}

pub fn l2_norm<T: Copy>(f: &[T], h: f64, abs2: impl Fn(T) -> f64) -> f64 {
    let v: Vec<f64> = f.iter().map(|&x| abs2(x)).collect();
    let s = trapz(&v, h);
    if s.is_nan() {
        f64::NAN
    } else {
        s.max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cumulative_is_fourth_order() {
        let err = |n: usize| {
            let h = 2.0 / (n - 1) as f64;
            let f: Vec<f64> = (0..n).map(|i| (-1.0 + i as f64 * h).cos()).collect();
            let c = cumulative(&f, h, n / 2);
            (0..n).map(|i| (c[i] - (-1.0 + i as f64 * h).sin()).abs()).fold(0.0, f64::max)
        };
        let r = err(41) / err(81);
        assert!(r > 12.0, "ratio {r}");
    }

    #[test]
    fn hermite5_reproduces_quintics() {
        let p = |x: f64| 1.0 + x - 2.0 * x * x + 0.5 * x.powi(3) + 0.25 * x.powi(4) - 0.1 * x.powi(5);
        let dp = |x: f64| 1.0 - 4.0 * x + 1.5 * x * x + x.powi(3) - 0.5 * x.powi(4);
        let sp = |x: f64| -4.0 + 3.0 * x + 3.0 * x * x - 2.0 * x.powi(3);
        let (a, b) = (0.3, 0.8);
        let h = b - a;
        for t in [0.0, 0.2, 0.5, 0.9, 1.0] {
            let (v, d) = hermite5(p(a), dp(a), sp(a), p(b), dp(b), sp(b), t, h);
            assert!((v - p(a + t * h)).abs() < 1e-13);
            assert!((d - dp(a + t * h)).abs() < 1e-12);
        }
    }

    #[test]
    fn deriv_exact_on_quartics() {
        let h = 0.1;
        let f: Vec<f64> = (0..12).map(|i| (i as f64 * h).powi(4)).collect();
        let d = deriv(&f, h);
        for (i, v) in d.iter().enumerate() {
            let x = i as f64 * h;
            assert!((v - 4.0 * x.powi(3)).abs() < 1e-10, "{i}");
        }
    }
}
