//! Independent numerical checks on the analytic construction: the
//! Schrödinger residual by finite differences, a Crank–Nicolson propagator
//! in `(z, r)`, normalized overlaps, and the dispersive Gaussian width used
//! as the contrast case.

mod propagate;
mod residual;
mod tridiag;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::modes::PhysicalParams;
use crate::packets::Field;

pub use propagate::{
    axial_width, axis_slope, default_time_step, propagate, propagate_axial, propagate_with_summary, AxialBoundary,
    Boundary, PropagationSummary, PropagatorConfig,
};
pub use residual::{observed_order, schrodinger_residual, ResidualReport};

/// `⟨a|b⟩ / √(⟨a|a⟩⟨b|b⟩)` with the trapezoid measure `2π r dr dz`.
pub fn overlap(a: &Field, b: &Field) -> Result<Complex64> {
    if a.z_grid() != b.z_grid() || a.r_grid() != b.r_grid() {
        return Err(Error::Argument("overlap needs fields on identical grids".into()));
    }
    a.require_area()?;
    let weights = a.cylinder_weights();
    let mut ab = Complex64::new(0.0, 0.0);
    let mut aa = 0.0;
    let mut bb = 0.0;
    for ((w, x), y) in weights.iter().zip(a.values()).zip(b.values()) {
        ab += x.conj() * y * *w;
        aa += w * x.norm_sqr();
        bb += w * y.norm_sqr();
    }
    if !(aa > 0.0 && bb > 0.0) {
        return Err(Error::Degenerate("overlap with a zero-norm field".into()));
    }
    Ok(ab / math::sqrt(aa * bb))
}

/// Width of a free one-dimensional Gaussian whose `|ψ|²` starts with
/// standard deviation `sigma0`: `σ(t) = σ0 √(1 + (ħt / (2mσ0²))²)`.
pub fn gaussian_comparator(sigma0: f64, params: &PhysicalParams, t: f64) -> Result<f64> {
    if !(sigma0 > 0.0) || !sigma0.is_finite() {
        return Err(Error::Argument(alloc::format!("sigma0 must be > 0, got {sigma0}")));
    }
    let spread = params.hbar() * t / (2.0 * params.mass() * sigma0 * sigma0);
    Ok(sigma0 * math::sqrt(1.0 + spread * spread))
}

/// `exp(−(z − z0)² / (4σ0²) + i k z)`, whose `|ψ|²` has standard deviation
/// `sigma0`.
pub fn gaussian_packet(z: f64, sigma0: f64, center: f64, wavenumber: f64) -> Complex64 {
    let d = z - center;
    math::cis(wavenumber * z) * math::exp(-d * d / (4.0 * sigma0 * sigma0))
}
