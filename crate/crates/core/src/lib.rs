//! Dispersionless cylindrical solutions of the free-particle Schrödinger
//! equation, the wave packets built from them, and the numerical machinery
//! used to check that they translate rigidly yet cannot be normalized.
//!
//! The crate is `no_std` and needs only `alloc`. Transcendental functions
//! come from [`libm`], so results are bit-identical across hosts.
//!
//! Modules:
//! - [`specialfn`]: J0, J1, Y0 and Gauss–Legendre rules.
//! - [`modes`]: single separable modes `R(r) f(z - v t)` and the admissible
//!   spectral window.
//! - [`packets`]: superpositions over the window, sampled fields, and the
//!   windowed norm integral.
//! - [`oracle`]: finite-difference Schrödinger residuals, a Crank–Nicolson
//!   propagator in (z, r), overlaps, and the dispersive Gaussian comparator.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
mod math;

pub mod modes;
pub mod oracle;
pub mod packets;
pub mod specialfn;

pub use error::{Error, Result};
pub use modes::{AxialWavenumbers, Mode, PhysicalParams};
pub use num_complex::Complex64;
pub use packets::{Field, NormMeasure, NormScanResult, SpectralWeights, UniformGrid};
pub use specialfn::QuadratureRule;
