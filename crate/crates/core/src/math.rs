//! Thin wrappers over `libm` so every transcendental call goes through one
//! implementation regardless of whether `std` is linked.

use num_complex::Complex64;

pub(crate) const FRAC_2_PI: f64 = core::f64::consts::FRAC_2_PI;
pub(crate) const PI: f64 = core::f64::consts::PI;
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub(crate) fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// `exp(i·phase)`.
#[inline]
pub(crate) fn cis(phase: f64) -> Complex64 {
    let (s, c) = sin_cos(phase);
    Complex64::new(c, s)
}

#[inline]
pub(crate) fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}
