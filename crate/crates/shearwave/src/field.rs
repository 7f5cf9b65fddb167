use crate::grid::YGrid;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One Fourier-in-x mode sampled on a uniform grid (y or v).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeField {
    pub start: f64,
    pub spacing: f64,
    pub values: Vec<Complex64>,
}

impl ModeField {
    pub fn new(start: f64, spacing: f64, values: Vec<Complex64>) -> Self {
        Self { start, spacing, values }
    }

    pub fn on_grid(grid: &YGrid, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), grid.n);
        Self::new(-grid.half_width, grid.h, values)
    }

    pub fn zeros(grid: &YGrid) -> Self {
        Self::on_grid(grid, vec![Complex64::new(0.0, 0.0); grid.n])
    }

    pub fn sampled(start: f64, spacing: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Self {
        Self::new(start, spacing, (0..n).map(|i| f(start + i as f64 * spacing)).collect())
    }

    /// Gaussian-windowed sum of five random waves with frequencies below `max_freq`.
    pub fn random_band_limited(grid: &YGrid, rng: &mut impl rand::Rng, max_freq: f64, width: f64) -> Self {
        let waves: Vec<(f64, f64, Complex64)> = (0..5)
            .map(|_| {
                let xi = rng.gen_range(0.0..max_freq);
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                (xi, theta, a)
            })
            .collect();
        let shift = rng.gen_range(-0.5..0.5) * width;
        Self::from_fn(grid, |y| {
            let env = (-((y - shift) / width).powi(2)).exp();
            waves.iter().map(|(xi, th, a)| a * (xi * y + th).cos()).sum::<Complex64>() * env
        })
    }

    pub fn from_fn(grid: &YGrid, f: impl Fn(f64) -> Complex64) -> Self {
        Self::on_grid(grid, (0..grid.n).map(|i| f(grid.y(i))).collect())
    }

    pub fn from_real(grid: &YGrid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |y| Complex64::new(f(y), 0.0))
    }

    /// Cubic interpolation at coordinate x; zero outside the sampled window.
    pub fn sample(&self, x: f64) -> Complex64 {
        let n = self.values.len();
        let s = (x - self.start) / self.spacing;
        if n == 0 || s < -1e-9 || s > (n - 1) as f64 + 1e-9 {
            return Complex64::new(0.0, 0.0);
        }
        crate::quad::lagrange3(&self.values, s.clamp(0.0, (n - 1) as f64))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.start + i as f64 * self.spacing
    }

    pub fn norm(&self) -> f64 {
        crate::quad::l2_norm(&self.values, self.spacing, |z: Complex64| z.norm_sqr())
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Bilinear pairing (no conjugation).
    pub fn pair(&self, other: &ModeField) -> Complex64 {
        let p: Vec<Complex64> = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        crate::quad::trapz(&p, self.spacing)
    }

    pub fn map(&self, f: impl Fn(usize, Complex64) -> Complex64) -> ModeField {
        let values = self.values.iter().enumerate().map(|(i, &z)| f(i, z)).collect();
        ModeField { start: self.start, spacing: self.spacing, values }
    }

    pub fn scale(&self, a: Complex64) -> ModeField {
        self.map(|_, z| z * a)
    }

    pub fn sub(&self, other: &ModeField) -> ModeField {
        self.map(|i, z| z - other.values[i])
    }

    pub fn add(&self, other: &ModeField) -> ModeField {
        self.map(|i, z| z + other.values[i])
    }
}
