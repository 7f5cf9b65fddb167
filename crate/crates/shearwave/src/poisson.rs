//! Per-mode Laplacian, its inverse, and implicit diffusion solves (Dirichlet at ±L).

use num_complex::Complex64;

/// Thomas algorithm for a symmetric constant tridiagonal system on interior nodes.
/// `rhs` covers all nodes; the two boundary values of the result are zero.
pub fn solve_sym_tridiag(off: f64, diag: f64, rhs: &[Complex64]) -> Vec<Complex64> {
    let n = rhs.len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    if n < 3 {
        return x;
    }
    let m = n - 2;
    let mut cp = vec![0.0; m];
    let mut dp = vec![Complex64::new(0.0, 0.0); m];
    cp[0] = off / diag;
    dp[0] = rhs[1] / diag;
    for i in 1..m {
        let den = diag - off * cp[i - 1];
        cp[i] = off / den;
        dp[i] = (rhs[i + 1] - dp[i - 1] * off) / den;
    }
    x[m] = dp[m - 1];
    for i in (0..m - 1).rev() {
        x[i + 1] = dp[i] - x[i + 2] * cp[i];
    }
    x
}

/// Solve (d_yy - k^2) psi = omega with Numerov's fourth-order scheme.
pub fn inverse_laplacian(omega: &[Complex64], k: f64, h: f64) -> Vec<Complex64> {
    let n = omega.len();
    let q = h * h * k * k / 12.0;
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for i in 1..n.saturating_sub(1) {
        rhs[i] = (omega[i - 1] + omega[i] * 10.0 + omega[i + 1]) * (h * h / 12.0);
    }
    solve_sym_tridiag(1.0 - q, -2.0 - 10.0 * q, &rhs)
}

/// Second-order (d_yy - k^2) f with zero boundary values.
pub fn apply_laplacian(f: &[Complex64], k: f64, h: f64) -> Vec<Complex64> {
    let n = f.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let s = 1.0 / (h * h);
    for i in 1..n.saturating_sub(1) {
        out[i] = (f[i - 1] + f[i + 1] - f[i] * 2.0) * s - f[i] * (k * k);
    }
    out
}

/// Solve (I - a (d_yy - k^2)) x = rhs with the second-order stencil.
pub fn solve_implicit_diffusion(rhs: &[Complex64], a: f64, k: f64, h: f64) -> Vec<Complex64> {
    let s = a / (h * h);
    solve_sym_tridiag(-s, 1.0 + 2.0 * s + a * k * k, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerov_fourth_order() {
        let k = 1.5;
        let err = |n: usize| {
            let l = 3.0;
            let h = 2.0 * l / (n - 1) as f64;
            let ys: Vec<f64> = (0..n).map(|i| -l + i as f64 * h).collect();
            // psi = sin(pi (y+L) / 2L)
            let w = std::f64::consts::PI / (2.0 * l);
            let psi: Vec<f64> = ys.iter().map(|y| (w * (y + l)).sin()).collect();
            let om: Vec<Complex64> = psi.iter().map(|p| Complex64::new(-(w * w + k * k) * p, 0.0)).collect();
            let sol = inverse_laplacian(&om, k, h);
            sol.iter().zip(&psi).map(|(a, b)| (a.re - b).abs()).fold(0.0, f64::max)
        };
        let r = err(41) / err(81);
        assert!(r > 14.0, "ratio {r}");
        assert!(err(161) < 1e-8);
    }

    #[test]
    fn implicit_diffusion_inverts() {
        let n = 50;
        let h = 0.1;
        let x: Vec<Complex64> = (0..n)
            .map(|i| if i == 0 || i == n - 1 { Complex64::new(0.0, 0.0) } else { Complex64::new((i as f64).sin(), (i as f64 * 0.3).cos()) })
            .collect();
        let lap = apply_laplacian(&x, 2.0, h);
        let rhs: Vec<Complex64> = x.iter().zip(&lap).map(|(a, l)| a - l * 0.3).collect();
        let y = solve_implicit_diffusion(&rhs, 0.3, 2.0, h);
        for i in 0..n {
            assert!((y[i] - x[i]).norm() < 1e-12);
        }
    }
}
