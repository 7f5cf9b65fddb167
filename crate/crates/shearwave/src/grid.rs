use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform symmetric grid on [-L, L].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct YGrid {
    pub half_width: f64,
    pub n: usize,
    pub h: f64,
}

impl YGrid {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) || !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::InvalidGrid { n, half_width });
        }
        Ok(Self { half_width, n, h: 2.0 * half_width / (n - 1) as f64 })
    }

    /// L = 20, n = 2001.
    pub fn standard() -> Self {
        Self::new(20.0, 2001).unwrap()
    }

    /// Grid with spacing at most `h_max`.
    pub fn with_spacing(half_width: f64, h_max: f64) -> Result<Self> {
        let cells = (2.0 * half_width / h_max).ceil() as usize;
        let cells = cells + cells % 2;
        Self::new(half_width, cells + 1)
    }

    #[inline]
    pub fn y(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.h
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.y(i)).collect()
    }

    pub fn center(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn contains(&self, y: f64) -> bool {
        y >= -self.half_width && y <= self.half_width
    }

    /// Index of the nearest node.
    pub fn nearest(&self, y: f64) -> usize {
        let r = ((y + self.half_width) / self.h).round();
        r.clamp(0.0, (self.n - 1) as f64) as usize
    }

    /// Cell index `i` and local coordinate `t` in [0,1] with y = y_i + t h.
    #[inline]
    pub fn locate(&self, y: f64) -> (usize, f64) {
        let x = (y + self.half_width) / self.h;
        let i = (x.floor().max(0.0) as usize).min(self.n - 2);
        (i, x - i as f64)
    }
}
