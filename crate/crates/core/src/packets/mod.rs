//! Wave packets
//!
//! `Ψ(z, r, t) = ∫₀^{q_max} [A(q) e^{i k₊ u} + B(q) e^{i k₋ u}] J0(√q r) dq`,
//! `u = z − v t`, and the windowed version of their norm integral.
//!
//! Every spectral integral uses the substitution `q = q_max sin²θ`,
//! `θ ∈ [0, π/2]`. Then `√(q_max − q) = |mv/ħ| cos θ`, so neither the axial
//! phases nor `J0(√q r)` has a square-root kink at either end of the window,
//! and `dq/q = 2 cot θ dθ` is integrable against weights vanishing like
//! `q^{1/2}` or faster.

mod field;
mod norm;
mod weights;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, PI};
use crate::modes::PhysicalParams;
use crate::specialfn::{self, gauss_legendre};

pub use field::{direct_cylinder_norm, Field, UniformGrid};
pub use norm::{norm_integrand, norm_scan, norm_scan_with, window_norm, window_norm_with, NormMeasure, NormScanResult};
pub use weights::{SpectralWeights, WeightTable};

/// A Gauss–Legendre rule in `θ` with the derived spectral quantities at
/// each node.
pub(crate) struct SpectralNodes {
    pub weight: Vec<f64>,
    pub q: Vec<f64>,
    /// `dq/dθ = 2 q_max sin θ cos θ`
    pub jacobian: Vec<f64>,
    /// `cot θ`, so that `dq/q = 2 cot θ dθ`
    pub cot: Vec<f64>,
    /// `√(q_max − q) = |k0| cos θ`
    pub root: Vec<f64>,
}

impl SpectralNodes {
    pub fn new(params: &PhysicalParams, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("spectral quadrature needs at least one node".into()));
        }
        let q_max = params.q_max();
        if !(q_max > 0.0) {
            return Err(Error::DegenerateSpectrum);
        }
        let k0 = params.carrier_wavenumber().abs();
        let rule = gauss_legendre(n, 0.0, 0.5 * PI)?;
        let mut nodes = Self {
            weight: Vec::with_capacity(n),
            q: Vec::with_capacity(n),
            jacobian: Vec::with_capacity(n),
            cot: Vec::with_capacity(n),
            root: Vec::with_capacity(n),
        };
        for (theta, w) in rule.iter() {
            let (s, c) = math::sin_cos(theta);
            nodes.weight.push(w);
            nodes.q.push(q_max * s * s);
            nodes.jacobian.push(2.0 * q_max * s * c);
            nodes.cot.push(c / s);
            nodes.root.push(k0 * c);
        }
        Ok(nodes)
    }
}

/// A packet discretized on `n_nodes` spectral nodes, ready for repeated
/// evaluation. Pointwise and grid evaluation perform identical arithmetic.
#[derive(Clone, Debug)]
pub struct Packet {
    params: PhysicalParams,
    sqrt_q: Vec<f64>,
    k_plus: Vec<f64>,
    k_minus: Vec<f64>,
    /// quadrature weight · dq/dθ · A(q)
    a: Vec<Complex64>,
    /// quadrature weight · dq/dθ · B(q)
    b: Vec<Complex64>,
}

impl Packet {
    pub fn new(params: &PhysicalParams, weights: &SpectralWeights, n_nodes: usize) -> Result<Self> {
        let nodes = SpectralNodes::new(params, n_nodes)?;
        weights.check_window(params.q_max())?;
        let k0 = params.carrier_wavenumber();
        let mut packet = Self {
            params: *params,
            sqrt_q: Vec::with_capacity(n_nodes),
            k_plus: Vec::with_capacity(n_nodes),
            k_minus: Vec::with_capacity(n_nodes),
            a: Vec::with_capacity(n_nodes),
            b: Vec::with_capacity(n_nodes),
        };
        for i in 0..n_nodes {
            let q = nodes.q[i];
            let (a, b) = weights.eval(q)?;
            let scale = nodes.weight[i] * nodes.jacobian[i];
            packet.sqrt_q.push(math::sqrt(q));
            packet.k_plus.push(k0 + nodes.root[i]);
            packet.k_minus.push(k0 - nodes.root[i]);
            packet.a.push(a * scale);
            packet.b.push(b * scale);
        }
        Ok(packet)
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn n_nodes(&self) -> usize {
        self.sqrt_q.len()
    }

    #[inline]
    fn axial_term(&self, n: usize, u: f64) -> Complex64 {
        self.a[n] * math::cis(self.k_plus[n] * u) + self.b[n] * math::cis(self.k_minus[n] * u)
    }

    pub fn eval(&self, z: f64, r: f64, t: f64) -> Complex64 {
        let u = z - self.params.speed() * t;
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 0..self.n_nodes() {
            sum += self.axial_term(n, u) * specialfn::j0(self.sqrt_q[n] * r);
        }
        sum
    }

    /// Separable evaluation: the axial terms per `z` row and the Bessel
    /// factors per `r` column are computed once, then combined in the same
    /// order as [`Packet::eval`].
    pub fn eval_grid(&self, z_grid: &UniformGrid, r_grid: &UniformGrid, t: f64) -> Result<Field> {
        let n = self.n_nodes();
        let n_r = r_grid.len();
        let mut bessel = Vec::with_capacity(n_r * n);
        for r in r_grid.points() {
            bessel.extend(self.sqrt_q.iter().map(|&s| specialfn::j0(s * r)));
        }
        let mut axial = alloc::vec![Complex64::new(0.0, 0.0); n];
        let mut values = Vec::with_capacity(z_grid.len() * n_r);
        let v = self.params.speed();
        for z in z_grid.points() {
            let u = z - v * t;
            for (k, slot) in axial.iter_mut().enumerate() {
                *slot = self.axial_term(k, u);
            }
            for j in 0..n_r {
                let column = &bessel[j * n..(j + 1) * n];
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    sum += axial[k] * column[k];
                }
                values.push(sum);
            }
        }
        Field::new(values, *z_grid, *r_grid, t, self.params)
    }
}

/// Gauss–Legendre value of the packet integral at one point.
pub fn eval_packet(
    params: &PhysicalParams,
    weights: &SpectralWeights,
    n_nodes: usize,
    z: f64,
    r: f64,
    t: f64,
) -> Result<Complex64> {
    Ok(Packet::new(params, weights, n_nodes)?.eval(z, r, t))
}

pub fn eval_packet_grid(
    params: &PhysicalParams,
    weights: &SpectralWeights,
    n_nodes: usize,
    z_grid: &UniformGrid,
    r_grid: &UniformGrid,
    t: f64,
) -> Result<Field> {
    Packet::new(params, weights, n_nodes)?.eval_grid(z_grid, r_grid, t)
}
