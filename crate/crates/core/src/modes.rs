//! Single separable modes `Ψ = R(r) f(z − v t)` of the free-particle
//! Schrödinger equation in cylindrical coordinates, independent of the
//! azimuth.
//!
//! Separating variables gives the axial equation `f'' − i(2mv/ħ) f' − q f = 0`
//! and the radial Bessel equation `(1/r)(r R')' + q R = 0`. Both factors are
//! bounded exactly when `0 ≤ q ≤ (mv/ħ)²` and the `Y0` (or `ln r`) radial
//! component is dropped.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::specialfn;

/// Mass `m`, phase speed `v` and Planck constant `ħ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    mass: f64,
    speed: f64,
    hbar: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, speed: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::Argument(alloc::format!("mass must be finite and > 0, got {mass}")));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::Argument(alloc::format!("hbar must be finite and > 0, got {hbar}")));
        }
        if !speed.is_finite() {
            return Err(Error::Argument(alloc::format!("speed must be finite, got {speed}")));
        }
        Ok(Self { mass, speed, hbar })
    }

    /// `m = v = ħ = 1`.
    pub const fn natural() -> Self {
        Self { mass: 1.0, speed: 1.0, hbar: 1.0 }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `m v / ħ`, half the axial wavenumber sum. Negative when `v < 0`.
    pub fn carrier_wavenumber(&self) -> f64 {
        self.mass * self.speed / self.hbar
    }

    /// Upper end of the admissible window, `(m v / ħ)²`.
    pub fn q_max(&self) -> f64 {
        let k0 = self.carrier_wavenumber();
        k0 * k0
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::natural()
    }
}

/// `true` iff `0 ≤ q ≤ q_max`; NaN is never admissible.
pub fn admissible(params: &PhysicalParams, q: f64) -> bool {
    q >= 0.0 && q <= params.q_max()
}

fn check_admissible(params: &PhysicalParams, q: f64) -> Result<()> {
    if admissible(params, q) {
        Ok(())
    } else if q < 0.0 {
        Err(Error::Domain(alloc::format!("q = {q} violates the lower bound 0 <= q of the admissible window")))
    } else {
        Err(Error::Domain(alloc::format!(
            "q = {q} violates the bound q <= q_max = (m v / hbar)^2 = {} of the admissible window",
            params.q_max()
        )))
    }
}

/// The two axial wavenumbers `k± = (m v ± √(m²v² − q ħ²)) / ħ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxialWavenumbers {
    pub k_plus: f64,
    pub k_minus: f64,
}

impl AxialWavenumbers {
    /// `k₊ − k₋ = 2√(m²v² − qħ²)/ħ`, the beat wavenumber of the cross term.
    pub fn splitting(&self) -> f64 {
        self.k_plus - self.k_minus
    }
}

pub fn axial_wavenumbers(params: &PhysicalParams, q: f64) -> Result<AxialWavenumbers> {
    check_admissible(params, q)?;
    Ok(wavenumbers_unchecked(params, q))
}

/// Caller guarantees admissibility. `√(m²v² − qħ²)/ħ = √(q_max − q)`, and
/// the clamp absorbs the last-ulp rounding at `q = q_max`.
pub(crate) fn wavenumbers_unchecked(params: &PhysicalParams, q: f64) -> AxialWavenumbers {
    let k0 = params.carrier_wavenumber();
    let root = math::sqrt((k0 * k0 - q).max(0.0));
    AxialWavenumbers { k_plus: k0 + root, k_minus: k0 - root }
}

/// One separable solution: separation constant `q` and coefficients
/// `c1..c4`.
///
/// The axial factor is `f(u) = c1·e^{i k₋ u} + c2·e^{i k₊ u}`, which reduces
/// at `q = 0` to the plane-wave form `c1 + c2·e^{2imvu/ħ}`. The radial factor
/// is `c3·J0(√q r) + c4·Y0(√q r)`, or `c3 + c4·ln r` at `q = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mode {
    pub q: f64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
}

impl Mode {
    /// A bounded mode: checks `0 ≤ q ≤ q_max` and sets `c4 = 0`.
    pub fn new(params: &PhysicalParams, q: f64, c1: Complex64, c2: Complex64, c3: Complex64) -> Result<Self> {
        check_admissible(params, q)?;
        Ok(Self { q, c1, c2, c3, c4: Complex64::new(0.0, 0.0) })
    }

    /// No checks at all. Only useful to exhibit the singular `Y0` / `ln r`
    /// branch or the growing exponentials outside the window.
    pub fn unchecked(q: f64, c1: Complex64, c2: Complex64, c3: Complex64, c4: Complex64) -> Self {
        Self { q, c1, c2, c3, c4 }
    }

    /// The plane wave `e^{2imv(z − vt)/ħ}` (q = 0, c1 = 0, c2 = c3 = 1).
    pub fn plane_wave() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Self { q: 0.0, c1: zero, c2: one, c3: one, c4: zero }
    }

    pub fn is_bounded(&self) -> bool {
        self.c4 == Complex64::new(0.0, 0.0)
    }
}

/// `f(u) = c1·e^{i k₋ u} + c2·e^{i k₊ u}`.
pub fn eval_axial(params: &PhysicalParams, mode: &Mode, u: f64) -> Result<Complex64> {
    let k = axial_wavenumbers(params, mode.q)?;
    Ok(axial_with(&k, mode, u))
}

#[inline]
pub(crate) fn axial_with(k: &AxialWavenumbers, mode: &Mode, u: f64) -> Complex64 {
    mode.c1 * math::cis(k.k_minus * u) + mode.c2 * math::cis(k.k_plus * u)
}

/// The axial factor for any real `q`, using the complex square root
/// `√(qħ² − m²v²)`. Outside the window the exponents acquire real parts and
/// one of the two terms grows without bound.
pub fn eval_axial_general(params: &PhysicalParams, mode: &Mode, u: f64) -> Complex64 {
    let k0 = params.carrier_wavenumber();
    let disc = mode.q - k0 * k0;
    // Branch chosen so that inside the window this matches `eval_axial`:
    // rate_minus = i k₋, rate_plus = i k₊.
    let root = if disc <= 0.0 { Complex64::new(0.0, math::sqrt(-disc)) } else { Complex64::new(math::sqrt(disc), 0.0) };
    let i_k0 = Complex64::new(0.0, k0);
    let rate_minus = i_k0 - root;
    let rate_plus = i_k0 + root;
    mode.c1 * cexp(rate_minus * u) + mode.c2 * cexp(rate_plus * u)
}

fn cexp(z: Complex64) -> Complex64 {
    math::cis(z.im) * math::exp(z.re)
}

/// `R(r)`: `c3·J0(√q r) + c4·Y0(√q r)` for `q > 0`, `c3 + c4·ln r` for `q = 0`.
pub fn eval_radial(_params: &PhysicalParams, mode: &Mode, r: f64) -> Result<Complex64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(alloc::format!("radius must be finite and >= 0, got {r}")));
    }
    if !(mode.q >= 0.0) || !mode.q.is_finite() {
        return Err(Error::Domain(alloc::format!(
            "radial factor needs q >= 0 (lower bound of the admissible window), got {}",
            mode.q
        )));
    }
    let bounded = mode.is_bounded();
    if !bounded && r == 0.0 {
        return Err(Error::Singularity { r });
    }
    if mode.q == 0.0 {
        let mut value = mode.c3;
        if !bounded {
            value += mode.c4 * math::ln(r);
        }
        return Ok(value);
    }
    let x = math::sqrt(mode.q) * r;
    let mut value = mode.c3 * specialfn::j0(x);
    if !bounded {
        value += mode.c4 * specialfn::y0(x);
    }
    Ok(value)
}

/// `Ψ(z, r, t) = R(r) · f(z − v t)`.
pub fn eval_mode(params: &PhysicalParams, mode: &Mode, z: f64, r: f64, t: f64) -> Result<Complex64> {
    let u = z - params.speed() * t;
    Ok(eval_radial(params, mode, r)? * eval_axial(params, mode, u)?)
}
