use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::modes::PhysicalParams;

/// Finite-difference residual `iħ ∂Ψ/∂t − HΨ` over a probe set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub rms: f64,
    /// `max |HΨ|` over the probes.
    pub scale: f64,
    /// `(Δz, Δr, Δt)`
    pub grid_step: (f64, f64, f64),
}

impl ResidualReport {
    /// `max_abs / scale`, or `max_abs` itself for a vanishing field.
    pub fn max_rel(&self) -> f64 {
        if self.scale > 0.0 {
            self.max_abs / self.scale
        } else {
            self.max_abs
        }
    }

    pub fn rms_rel(&self) -> f64 {
        if self.scale > 0.0 {
            self.rms / self.scale
        } else {
            self.rms
        }
    }
}

/// `log2(coarse / fine)` of the maximum residuals, the observed order when
/// every step is halved.
pub fn observed_order(coarse: &ResidualReport, fine: &ResidualReport) -> f64 {
    math::ln(coarse.max_abs / fine.max_abs) / core::f64::consts::LN_2
}

// Fourth-order central stencils.
fn d1(minus2: Complex64, minus1: Complex64, plus1: Complex64, plus2: Complex64, h: f64) -> Complex64 {
    (minus2 - plus2 + (plus1 - minus1) * 8.0) / (12.0 * h)
}

fn d2(
    minus2: Complex64,
    minus1: Complex64,
    center: Complex64,
    plus1: Complex64,
    plus2: Complex64,
    h: f64,
) -> Complex64 {
    ((plus1 + minus1) * 16.0 - (plus2 + minus2) - center * 30.0) / (12.0 * h * h)
}

/// Residual of the free Schrödinger equation
/// `iħ Ψ_t = −(ħ²/2m)(Ψ_zz + Ψ_rr + Ψ_r / r)` at each probe `(z, r)`.
///
/// Probes on the axis (`r = 0`) use `Ψ_rr + Ψ_r/r → 2 Ψ_rr` with samples at
/// `|r ± h|`; off-axis probes need `r ≥ 2Δr`.
pub fn schrodinger_residual<F>(
    params: &PhysicalParams,
    mut sampler: F,
    probes: &[(f64, f64)],
    t: f64,
    steps: (f64, f64, f64),
) -> Result<ResidualReport>
where
    F: FnMut(f64, f64, f64) -> Result<Complex64>,
{
    let (dz, dr, dt) = steps;
    if !(dz > 0.0 && dr > 0.0 && dt > 0.0) {
        return Err(Error::Argument(alloc::format!("step sizes must be > 0, got {steps:?}")));
    }
    if probes.is_empty() {
        return Err(Error::Argument("the residual needs at least one probe".into()));
    }
    let hbar = params.hbar();
    let kinetic = hbar * hbar / (2.0 * params.mass());
    let i_hbar = Complex64::new(0.0, hbar);

    let mut max_abs: f64 = 0.0;
    let mut sum_sq = 0.0;
    let mut scale: f64 = 0.0;
    for &(z, r) in probes {
        if !(r >= 0.0) {
            return Err(Error::Geometry(alloc::format!("probe radius must be >= 0, got {r}")));
        }
        if r > 0.0 && r < 2.0 * dr {
            return Err(Error::Geometry(alloc::format!(
                "probe at r = {r} is within 2*dr = {} of the axis; use r = 0 (axis rule) or r >= 2*dr",
                2.0 * dr
            )));
        }
        let center = sampler(z, r, t)?;

        let time_derivative = d1(
            sampler(z, r, t - 2.0 * dt)?,
            sampler(z, r, t - dt)?,
            sampler(z, r, t + dt)?,
            sampler(z, r, t + 2.0 * dt)?,
            dt,
        );
        let axial = d2(
            sampler(z - 2.0 * dz, r, t)?,
            sampler(z - dz, r, t)?,
            center,
            sampler(z + dz, r, t)?,
            sampler(z + 2.0 * dz, r, t)?,
            dz,
        );
        let radial = if r == 0.0 {
            let near = sampler(z, dr, t)?;
            let far = sampler(z, 2.0 * dr, t)?;
            d2(far, near, center, near, far, dr) * 2.0
        } else {
            let m2 = sampler(z, r - 2.0 * dr, t)?;
            let m1 = sampler(z, r - dr, t)?;
            let p1 = sampler(z, r + dr, t)?;
            let p2 = sampler(z, r + 2.0 * dr, t)?;
            d2(m2, m1, center, p1, p2, dr) + d1(m2, m1, p1, p2, dr) / r
        };

        let hamiltonian = (axial + radial) * (-kinetic);
        let residual = (i_hbar * time_derivative - hamiltonian).norm();
        max_abs = max_abs.max(residual);
        sum_sq += residual * residual;
        scale = scale.max(hamiltonian.norm());
    }
    let rms = math::sqrt(sum_sq / probes.len() as f64);
    Ok(ResidualReport { max_abs, rms, scale, grid_step: steps })
}
