use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerical core.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// A malformed argument: empty rule, reversed interval, bad grid, ...
    Argument(String),
    /// Evaluation hit the `Y0` / `ln r` singularity on the axis.
    Singularity { r: f64 },
    /// The spectral window `[0, q_max]` has zero length (speed = 0).
    DegenerateSpectrum,
    /// A finite-difference stencil would cross the axis.
    Geometry(String),
    /// A propagator configuration violates its own invariant.
    Configuration(String),
    /// An input with zero norm where a normalization is required.
    Degenerate(String),
    /// A table lookup outside the tabulated range.
    OutOfTable { q: f64, lo: f64, hi: f64 },
    /// A computation produced non-finite values or breached a tolerance.
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Self::Singularity { r } => {
                write!(f, "singular radial factor at r = {r}: the Y0 / ln(r) component requires c4 = 0 on the axis")
            }
            Self::DegenerateSpectrum => {
                write!(f, "degenerate spectrum: q_max = (m v / hbar)^2 = 0, there is no admissible q to integrate over")
            }
            Self::Geometry(msg) => write!(f, "stencil geometry: {msg}"),
            Self::Configuration(msg) => write!(f, "propagator configuration: {msg}"),
            Self::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
            Self::OutOfTable { q, lo, hi } => {
                write!(f, "q = {q} outside the weight table range [{lo}, {hi}]")
            }
            Self::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
