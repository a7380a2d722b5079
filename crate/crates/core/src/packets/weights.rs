use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// The spectral densities `A(q)` and `B(q)` of a packet.
///
/// `A` multiplies the `k₊` exponential and `B` the `k₋` one. Both must vanish
/// at `q = 0` so that `∫ (|A|² + |B|²) dq/q` stays finite.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectralWeights {
    /// `A(q) = amp_a · q^s · e^{−βq}`, `B(q) = amp_b · q^s · e^{−βq}`.
    PowerExp {
        amp_a: Complex64,
        amp_b: Complex64,
        exponent: f64,
        decay: f64,
    },
    Tabulated(WeightTable),
}

impl SpectralWeights {
    pub fn power_exp(amp_a: Complex64, amp_b: Complex64, exponent: f64, decay: f64) -> Result<Self> {
        if !(exponent >= 0.5) || !exponent.is_finite() {
            return Err(Error::Argument(alloc::format!(
                "power-exp exponent must be >= 0.5 for dq/q integrability, got {exponent}"
            )));
        }
        if !(decay > 0.0) || !decay.is_finite() {
            return Err(Error::Argument(alloc::format!("power-exp decay must be > 0, got {decay}")));
        }
        if !(amp_a.re.is_finite() && amp_a.im.is_finite() && amp_b.re.is_finite() && amp_b.im.is_finite()) {
            return Err(Error::Argument("power-exp amplitudes must be finite".into()));
        }
        Ok(Self::PowerExp { amp_a, amp_b, exponent, decay })
    }

    /// `s = 1`, `β = 2`, `amp_a = amp_b = 1`.
    pub fn default_preset() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::PowerExp { amp_a: one, amp_b: one, exponent: 1.0, decay: 2.0 }
    }

    pub fn zero() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::PowerExp { amp_a: zero, amp_b: zero, exponent: 1.0, decay: 2.0 }
    }

    pub fn tabulated(rows: Vec<(f64, Complex64, Complex64)>) -> Result<Self> {
        WeightTable::new(rows).map(Self::Tabulated)
    }

    /// `(A(q), B(q))`.
    pub fn eval(&self, q: f64) -> Result<(Complex64, Complex64)> {
        match self {
            Self::PowerExp { amp_a, amp_b, exponent, decay } => {
                if !(q >= 0.0) {
                    return Err(Error::Domain(alloc::format!("weights are defined for q >= 0, got {q}")));
                }
                let profile = math::pow(q, *exponent) * math::exp(-decay * q);
                Ok((amp_a * profile, amp_b * profile))
            }
            Self::Tabulated(table) => table.eval(q),
        }
    }

    pub fn is_zero(&self) -> bool {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Self::PowerExp { amp_a, amp_b, .. } => *amp_a == zero && *amp_b == zero,
            Self::Tabulated(table) => table.a.iter().chain(&table.b).all(|v| *v == zero),
        }
    }

    /// Checks the weights cover `[0, q_max]` and vanish at `q = 0`.
    ///
    /// With linear interpolation `|A|²/q ~ q` near the origin exactly when
    /// `A(0) = 0`, so that is the integrability test for tables.
    pub fn check_window(&self, q_max: f64) -> Result<()> {
        match self {
            Self::PowerExp { .. } => Ok(()),
            Self::Tabulated(table) => {
                let lo = table.q[0];
                let hi = *table.q.last().expect("table has at least two rows");
                if lo != 0.0 || hi < q_max * (1.0 - 1e-12) {
                    return Err(Error::Argument(alloc::format!(
                        "weight table covers [{lo}, {hi}] but the spectral window is [0, {q_max}]"
                    )));
                }
                let zero = Complex64::new(0.0, 0.0);
                if table.a[0] != zero || table.b[0] != zero {
                    return Err(Error::Argument(
                        "tabulated A(0) and B(0) must vanish, otherwise the dq/q norm integrand is not integrable"
                            .into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// Monotone `(q, A, B)` samples with linear interpolation and no
/// extrapolation.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable {
    q: Vec<f64>,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl WeightTable {
    pub fn new(rows: Vec<(f64, Complex64, Complex64)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Argument("a weight table needs at least two rows".into()));
        }
        let mut q = Vec::with_capacity(rows.len());
        let mut a = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        for (qi, ai, bi) in rows {
            let finite =
                qi.is_finite() && ai.re.is_finite() && ai.im.is_finite() && bi.re.is_finite() && bi.im.is_finite();
            if !finite {
                return Err(Error::Argument(alloc::format!("non-finite weight table row at q = {qi}")));
            }
            if let Some(&last) = q.last() {
                if !(qi > last) {
                    return Err(Error::Argument(alloc::format!(
                        "weight table q values must be strictly ascending ({last} then {qi})"
                    )));
                }
            }
            q.push(qi);
            a.push(ai);
            b.push(bi);
        }
        Ok(Self { q, a, b })
    }

    pub fn rows(&self) -> impl Iterator<Item = (f64, Complex64, Complex64)> + '_ {
        self.q.iter().zip(&self.a).zip(&self.b).map(|((&q, &a), &b)| (q, a, b))
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn eval(&self, q: f64) -> Result<(Complex64, Complex64)> {
        let lo = self.q[0];
        let hi = self.q[self.q.len() - 1];
        if !(q >= lo && q <= hi) {
            return Err(Error::OutOfTable { q, lo, hi });
        }
        let upper = self.q.partition_point(|&x| x < q).max(1);
        let lower = upper - 1;
        let span = self.q[upper] - self.q[lower];
        let frac = (q - self.q[lower]) / span;
        let lerp = |v: &[Complex64]| v[lower] + (v[upper] - v[lower]) * frac;
        Ok((lerp(&self.a), lerp(&self.b)))
    }
}
