//! Numerical toolkit for the linear and nonlinear stability of monotone shear
//! flows in the plane: Rayleigh equation solvers, spectral functionals, the
//! wave operator that conjugates the Rayleigh operator to multiplication, a
//! ghost Fourier multiplier, and per-mode linear and pseudo-spectral nonlinear
//! Navier–Stokes integrators.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

pub mod error;
pub mod field;
pub mod functionals;
pub mod grid;
pub mod harness;
pub mod linear;
pub mod multiplier;
pub mod nonlinear;
pub mod poisson;
pub mod profile;
pub mod quad;
pub mod rayleigh;
pub mod waveop;

pub use error::{Error, Result};
pub use field::ModeField;
pub use grid::YGrid;
pub use num_complex::Complex64;
pub use profile::{make_profile, ProfileSpec, ShearProfile};

/// Full-precision decimal (17 significant digits).
pub fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
