//! Cylindrical Bessel functions of order zero and one, and Gauss–Legendre
//! quadrature.
//!
//! `J0`, `J1` and `Y0` are evaluated in three bands:
//!
//! | `|x|`        | method                                                   |
//! |--------------|----------------------------------------------------------|
//! | `≤ 8`        | ascending power series (log-coupled series for `Y0`)     |
//! | `(8, 25)`    | Miller backward recurrence normalized by `J0 + 2ΣJ2k = 1`, with the Neumann series for `Y0` |
//! | `≥ 25`       | Hankel asymptotic expansion, summed to its smallest term |
//!
//! The asymptotic expansion's smallest term at `x = 25` is below `1e-20`,
//! and the series cancellation at `x = 8` costs about two digits, so all
//! three bands stay well inside `1e-10` absolute for `J` and `1e-9` for `Y0`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{self, EULER_GAMMA, FRAC_2_PI, PI};

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_LIMIT: f64 = 25.0;

/// `J0(x)`. Even in `x`; exact evenness holds because only `|x|` is used.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(alloc::format!("bessel_j0 needs a finite argument, got {x}")));
    }
    Ok(j0(x))
}

/// `J1(x)`. Odd in `x`.
pub fn bessel_j1(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(alloc::format!("bessel_j1 needs a finite argument, got {x}")));
    }
    Ok(j1(x))
}

/// `Y0(x)` for `x > 0`. Tends to `-∞` logarithmically at the origin.
pub fn bessel_y0(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(alloc::format!("bessel_y0 is defined for finite x > 0 only, got {x}")));
    }
    Ok(y0(x))
}

/// Unchecked `J0` for hot loops; `x` must be finite.
pub(crate) fn j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        j0_series(ax)
    } else if ax < ASYMPTOTIC_LIMIT {
        miller(ax).j0
    } else {
        let (p, q) = hankel_pq(0.0, ax);
        let (s, c) = math::sin_cos(ax);
        // cos(x - π/4) and sin(x - π/4) without forming x - π/4.
        let cos_chi = (c + s) * core::f64::consts::FRAC_1_SQRT_2;
        let sin_chi = (s - c) * core::f64::consts::FRAC_1_SQRT_2;
        math::sqrt(FRAC_2_PI / ax) * (p * cos_chi - q * sin_chi)
    }
}

pub(crate) fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax <= SERIES_LIMIT {
        j1_series(ax)
    } else if ax < ASYMPTOTIC_LIMIT {
        miller(ax).j1
    } else {
        let (p, q) = hankel_pq(1.0, ax);
        let (s, c) = math::sin_cos(ax);
        // χ = x - 3π/4
        let cos_chi = (s - c) * core::f64::consts::FRAC_1_SQRT_2;
        let sin_chi = -(s + c) * core::f64::consts::FRAC_1_SQRT_2;
        math::sqrt(FRAC_2_PI / ax) * (p * cos_chi - q * sin_chi)
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

pub(crate) fn y0(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        y0_series(x)
    } else if x < ASYMPTOTIC_LIMIT {
        miller(x).y0
    } else {
        let (p, q) = hankel_pq(0.0, x);
        let (s, c) = math::sin_cos(x);
        let cos_chi = (c + s) * core::f64::consts::FRAC_1_SQRT_2;
        let sin_chi = (s - c) * core::f64::consts::FRAC_1_SQRT_2;
        math::sqrt(FRAC_2_PI / x) * (p * sin_chi + q * cos_chi)
    }
}

fn j0_series(x: f64) -> f64 {
    let t = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= t / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    sum
}

fn j1_series(x: f64) -> f64 {
    let t = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= t / (kf * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    0.5 * x * sum
}

/// `Y0(x) = (2/π)[(ln(x/2) + γ) J0(x) − Σ_{k≥1} H_k (−x²/4)^k / (k!)²]`.
fn y0_series(x: f64) -> f64 {
    let t = -0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= t / (kf * kf);
        harmonic += 1.0 / kf;
        let contribution = harmonic * term;
        tail += contribution;
        if contribution.abs() < 1e-17 {
            break;
        }
    }
    FRAC_2_PI * ((math::ln(0.5 * x) + EULER_GAMMA) * j0_series(x) - tail)
}

struct MillerValues {
    j0: f64,
    j1: f64,
    y0: f64,
}

/// Backward recurrence `J_{k-1} = (2k/x) J_k − J_{k+1}` from an even start
/// well above `x`, normalized with `J0 + 2 Σ J_{2k} = 1`. The Neumann series
/// `Y0 = (2/π)[(ln(x/2)+γ) J0 + 2 Σ (−1)^{k+1} J_{2k}/k]` is accumulated on
/// the same pass.
fn miller(x: f64) -> MillerValues {
    let start = 2 * ((x as usize + 52) / 2);
    let mut above = 0.0; // J_{k+1}
    let mut current = 1e-30; // J_k
    let mut norm = 0.0;
    let mut neumann = 0.0;
    let mut j1 = 0.0;
    let two_over_x = 2.0 / x;
    let mut k = start;
    loop {
        if k.is_multiple_of(2) && k > 0 {
            let half = (k / 2) as f64;
            norm += 2.0 * current;
            if (k / 2) % 2 == 1 {
                neumann += current / half;
            } else {
                neumann -= current / half;
            }
        }
        if k == 1 {
            j1 = current;
        }
        if k == 0 {
            norm += current;
            break;
        }
        let below = (k as f64) * two_over_x * current - above;
        above = current;
        current = below;
        k -= 1;
        if current.abs() > 1e200 {
            let scale = 1e-200;
            current *= scale;
            above *= scale;
            norm *= scale;
            neumann *= scale;
            j1 *= scale;
        }
    }
    let j0 = current / norm;
    let j1 = j1 / norm;
    let neumann = neumann / norm;
    let y0 = FRAC_2_PI * ((math::ln(0.5 * x) + EULER_GAMMA) * j0 + 2.0 * neumann);
    MillerValues { j0, j1, y0 }
}

/// Hankel's `P(ν, x)` and `Q(ν, x)`, summed until the terms stop shrinking.
fn hankel_pq(order: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * order * order;
    let mut term = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut previous = f64::INFINITY;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let magnitude = term.abs();
        if magnitude >= previous || magnitude < 1e-18 {
            break;
        }
        previous = magnitude;
        // k ≡ 1 (mod 4): +Q, 2: −P, 3: −Q, 0: +P
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    (p, q)
}

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[lo, hi]`.
///
/// Nodes are strictly increasing and interior; all weights are positive.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lo: f64,
    hi: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(node, weight)` pairs in ascending node order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

/// Builds the `n`-point Gauss–Legendre rule on `[lo, hi]` by Newton iteration
/// on `P_n`, then maps it affinely. Exact for polynomials of degree `2n − 1`.
pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Argument("gauss_legendre needs at least one node".into()));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Argument(alloc::format!(
            "gauss_legendre needs a finite interval with lo < hi, got [{lo}, {hi}]"
        )));
    }

    // Reference rule on [-1, 1], filled symmetrically.
    let mut ref_nodes = alloc::vec![0.0; n];
    let mut ref_weights = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // i-th largest root
        let mut x = math::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut derivative = 1.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            derivative = dp;
            let step = p / dp;
            x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                let (_, dp) = legendre_with_derivative(n, x);
                derivative = dp;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        ref_nodes[n - 1 - i] = x;
        ref_nodes[i] = -x;
        ref_weights[n - 1 - i] = w;
        ref_weights[i] = w;
    }
    if n % 2 == 1 {
        ref_nodes[n / 2] = 0.0;
    }

    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let nodes = ref_nodes.iter().map(|&t| mid + half * t).collect();
    let weights = ref_weights.iter().map(|&w| half * w).collect();
    Ok(QuadratureRule { nodes, weights, lo, hi })
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_at_origin_is_one() {
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
        assert_eq!(bessel_j1(0.0).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_arguments_are_rejected() {
        assert!(matches!(bessel_j0(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_j1(f64::INFINITY), Err(Error::Domain(_))));
        assert!(matches!(bessel_y0(0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_y0(-1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_y0(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn y0_diverges_logarithmically() {
        assert!(bessel_y0(1e-8).unwrap() < -10.0);
        assert!(bessel_y0(1e-12).unwrap() < bessel_y0(1e-8).unwrap());
    }

    #[test]
    fn j0_is_exactly_even_and_j1_exactly_odd() {
        for &x in &[0.3, 5.0, 8.0, 12.5, 24.9, 25.0, 333.3] {
            assert_eq!(j0(-x), j0(x));
            assert_eq!(j1(-x), -j1(x));
        }
    }

    #[test]
    fn bands_join_continuously() {
        for &edge in &[SERIES_LIMIT, ASYMPTOTIC_LIMIT] {
            let below = edge * (1.0 - 1e-12);
            assert!((j0(below) - j0(edge)).abs() < 1e-11);
            assert!((j1(below) - j1(edge)).abs() < 1e-11);
            assert!((y0(below) - y0(edge)).abs() < 1e-11);
        }
    }

    #[test]
    fn gauss_legendre_small_rules() {
        let one = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert_eq!(one.nodes(), &[0.0]);
        assert_eq!(one.weights(), &[2.0]);

        let two = gauss_legendre(2, -1.0, 1.0).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((two.nodes()[0] + r).abs() < 1e-15);
        assert!((two.nodes()[1] - r).abs() < 1e-15);
        assert!((two.weights()[0] - 1.0).abs() < 1e-15);
        assert!((two.weights()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_rejects_bad_arguments() {
        assert!(matches!(gauss_legendre(0, 0.0, 1.0), Err(Error::Argument(_))));
        assert!(matches!(gauss_legendre(4, 1.0, 1.0), Err(Error::Argument(_))));
        assert!(matches!(gauss_legendre(4, 2.0, 1.0), Err(Error::Argument(_))));
    }

    #[test]
    fn cubic_on_unit_interval() {
        let rule = gauss_legendre(64, 0.0, 1.0).unwrap();
        let value = rule.integrate(|x| x * x * x);
        assert!((value - 0.25).abs() < 1e-14);
    }
}
