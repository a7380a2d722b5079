use alloc::vec::Vec;

use num_complex::Complex64;

use super::{SpectralNodes, SpectralWeights};
use crate::error::{Error, Result};
use crate::math::{self, PI};
use crate::modes::PhysicalParams;
use crate::specialfn::gauss_legendre;

/// Spectral measure paired with the norm integrand.
///
/// `DqOverQ` is `dq/q`, the weight of the closed-form norm expression this
/// crate reproduces. `TwiceDq` is `2 dq`, which follows from the Bessel
/// closure relation `∫ r J0(√q r) J0(√q' r) dr = 2 δ(q − q')` and is what a
/// direct `2π ∫∫ |Ψ|² r dr dz` converges to as the radial cutoff grows.
/// Both grow linearly with the window; they differ in the constant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormMeasure {
    #[default]
    DqOverQ,
    TwiceDq,
}

/// Per-`q` pieces of the integrand, split as `(|A| − |B|)²` and
/// `2|A||B|(1 + cos(ψ_A − ψ_B + 2z√(q_max − q)))`, both non-negative.
#[derive(Clone, Copy, Debug)]
struct IntegrandParts {
    difference_sq: f64,
    cross: f64,
    phase_offset: f64,
    beat: f64,
}

impl IntegrandParts {
    fn new(a: Complex64, b: Complex64, root: f64) -> Self {
        let abs_a = math::cabs(a);
        let abs_b = math::cabs(b);
        let difference = abs_a - abs_b;
        Self {
            difference_sq: difference * difference,
            cross: 2.0 * abs_a * abs_b,
            phase_offset: math::atan2(a.im, a.re) - math::atan2(b.im, b.re),
            beat: 2.0 * root,
        }
    }

    #[inline]
    fn at(&self, z: f64) -> f64 {
        self.difference_sq + self.cross * (1.0 + math::cos(self.phase_offset + self.beat * z))
    }
}

/// `|A|² + |B|² + 2 Re[A B* e^{(2zi/ħ)√(m²v² − qħ²)}]` for `0 < q ≤ q_max`.
///
/// Evaluated in the sum-of-non-negative-parts form, so the result is never
/// negative even when the cross term cancels the rest exactly.
pub fn norm_integrand(weights: &SpectralWeights, params: &PhysicalParams, z: f64, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "the norm integrand carries a 1/q weight and is evaluated for q > 0 only, got {q}"
        )));
    }
    let q_max = params.q_max();
    if q > q_max {
        return Err(Error::Domain(alloc::format!("q = {q} exceeds q_max = {q_max}")));
    }
    let (a, b) = weights.eval(q)?;
    let root = math::sqrt((q_max - q).max(0.0));
    Ok(IntegrandParts::new(a, b, root).at(z))
}

/// `N(Z) = 2π ∫_{−Z}^{Z} dz ∫₀^{q_max} integrand · dq/q`.
pub fn window_norm(
    params: &PhysicalParams,
    weights: &SpectralWeights,
    half_length: f64,
    n_q: usize,
    n_z: usize,
) -> Result<f64> {
    window_norm_with(params, weights, half_length, n_q, n_z, NormMeasure::DqOverQ)
}

pub fn window_norm_with(
    params: &PhysicalParams,
    weights: &SpectralWeights,
    half_length: f64,
    n_q: usize,
    n_z: usize,
    measure: NormMeasure,
) -> Result<f64> {
    WindowIntegrator::new(params, weights, n_q, measure)?.norm(half_length, n_z)
}

struct WindowIntegrator {
    parts: Vec<IntegrandParts>,
    /// θ-weight · measure factor
    weights: Vec<f64>,
}

impl WindowIntegrator {
    fn new(params: &PhysicalParams, weights: &SpectralWeights, n_q: usize, measure: NormMeasure) -> Result<Self> {
        let nodes = SpectralNodes::new(params, n_q)?;
        weights.check_window(params.q_max())?;
        let mut parts = Vec::with_capacity(n_q);
        let mut measure_weights = Vec::with_capacity(n_q);
        for i in 0..n_q {
            let (a, b) = weights.eval(nodes.q[i])?;
            parts.push(IntegrandParts::new(a, b, nodes.root[i]));
            let factor = match measure {
                NormMeasure::DqOverQ => 2.0 * nodes.cot[i],
                NormMeasure::TwiceDq => 2.0 * nodes.jacobian[i],
            };
            measure_weights.push(nodes.weight[i] * factor);
        }
        Ok(Self { parts, weights: measure_weights })
    }

    fn norm(&self, half_length: f64, n_z: usize) -> Result<f64> {
        if !(half_length > 0.0) || !half_length.is_finite() {
            return Err(Error::Argument(alloc::format!(
                "window half-length must be finite and > 0, got {half_length}"
            )));
        }
        let z_rule = gauss_legendre(n_z, -half_length, half_length)?;
        let mut total = 0.0;
        for (z, wz) in z_rule.iter() {
            let inner: f64 = self.parts.iter().zip(&self.weights).map(|(p, w)| w * p.at(z)).sum();
            total += wz * inner;
        }
        Ok(2.0 * PI * total)
    }
}

/// Window norms over increasing half-lengths with an ordinary least-squares
/// line `N ≈ slope · Z + intercept`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormScanResult {
    pub half_lengths: Vec<f64>,
    pub norms: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    /// `1 − SS_res / SS_tot`; defined as 1 when every norm is equal and the
    /// fit is exact (e.g. zero weights).
    pub r_squared: f64,
}

impl NormScanResult {
    /// `N(2Z)/N(Z)` for every pair in the scan where both appear.
    pub fn doubling_ratios(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for (i, &z) in self.half_lengths.iter().enumerate() {
            if let Some(j) = self.half_lengths.iter().position(|&y| y == 2.0 * z) {
                out.push((z, self.norms[j] / self.norms[i]));
            }
        }
        out
    }
}

pub fn norm_scan(
    params: &PhysicalParams,
    weights: &SpectralWeights,
    half_lengths: &[f64],
    n_q: usize,
    n_z: usize,
) -> Result<NormScanResult> {
    norm_scan_with(params, weights, half_lengths, n_q, n_z, NormMeasure::DqOverQ)
}

pub fn norm_scan_with(
    params: &PhysicalParams,
    weights: &SpectralWeights,
    half_lengths: &[f64],
    n_q: usize,
    n_z: usize,
    measure: NormMeasure,
) -> Result<NormScanResult> {
    if half_lengths.len() < 3 {
        return Err(Error::Argument(alloc::format!(
            "a norm scan needs at least 3 half-lengths, got {}",
            half_lengths.len()
        )));
    }
    if half_lengths.windows(2).any(|w| !(w[1] > w[0])) || !(half_lengths[0] > 0.0) {
        return Err(Error::Argument("half-lengths must be positive and strictly increasing".into()));
    }
    let integrator = WindowIntegrator::new(params, weights, n_q, measure)?;
    let norms = half_lengths.iter().map(|&z| integrator.norm(z, n_z)).collect::<Result<Vec<_>>>()?;
    let (slope, intercept, r_squared) = least_squares(half_lengths, &norms);
    Ok(NormScanResult { half_lengths: half_lengths.to_vec(), norms, slope, intercept, r_squared })
}

fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|&a| (a - mean_x) * (a - mean_x)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(&a, &b)| (a - mean_x) * (b - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = y.iter().map(|&b| (b - mean_y) * (b - mean_y)).sum();
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| {
            let e = b - (slope * a + intercept);
            e * e
        })
        .sum();
    let r_squared = if ss_tot == 0.0 {
        if ss_res == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - ss_res / ss_tot
    };
    (slope, intercept, r_squared)
}
