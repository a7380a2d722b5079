//! Complex tridiagonal solves (Thomas algorithm) with a pre-factored
//! constant matrix, plus the cyclic variant via Sherman–Morrison.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Thomas {
    sub: Vec<Complex64>,
    sup_prime: Vec<Complex64>,
    inv_denom: Vec<Complex64>,
}

impl Thomas {
    /// `sub[0]` and `sup[n-1]` are ignored.
    pub fn new(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 || sub.len() != n || sup.len() != n {
            return Err(Error::Argument("tridiagonal bands must have equal, nonzero length".into()));
        }
        let mut sup_prime = alloc::vec![Complex64::new(0.0, 0.0); n];
        let mut inv_denom = alloc::vec![Complex64::new(0.0, 0.0); n];
        let mut previous = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let denom = if i == 0 { diag[0] } else { diag[i] - sub[i] * previous };
            if denom.norm_sqr() < 1e-300 {
                return Err(Error::Numerical(alloc::format!("zero pivot in tridiagonal row {i}")));
            }
            inv_denom[i] = denom.inv();
            sup_prime[i] = if i + 1 < n { sup[i] * inv_denom[i] } else { Complex64::new(0.0, 0.0) };
            previous = sup_prime[i];
        }
        Ok(Self { sub: sub.to_vec(), sup_prime, inv_denom })
    }

    pub fn len(&self) -> usize {
        self.inv_denom.len()
    }

    /// Solves in place for `width` independent right-hand sides stored as
    /// `n` consecutive rows of `width` entries each.
    pub fn solve_rows(&self, data: &mut [Complex64], width: usize) {
        let n = self.len();
        debug_assert_eq!(data.len(), n * width);
        for v in &mut data[..width] {
            *v *= self.inv_denom[0];
        }
        for i in 1..n {
            let (done, rest) = data.split_at_mut(i * width);
            let previous = &done[(i - 1) * width..];
            let current = &mut rest[..width];
            let a = self.sub[i];
            let inv = self.inv_denom[i];
            for (x, &p) in current.iter_mut().zip(previous) {
                *x = (*x - a * p) * inv;
            }
        }
        for i in (0..n - 1).rev() {
            let (head, tail) = data.split_at_mut((i + 1) * width);
            let next = &tail[..width];
            let current = &mut head[i * width..];
            let c = self.sup_prime[i];
            for (x, &nx) in current.iter_mut().zip(next) {
                *x -= c * nx;
            }
        }
    }
}

/// Tridiagonal matrix plus the two corner entries `top_right = A[0][n-1]`
/// and `bottom_left = A[n-1][0]`.
#[derive(Clone, Debug)]
pub(crate) struct Cyclic {
    reduced: Thomas,
    correction: Vec<Complex64>,
    top_right: Complex64,
    gamma: Complex64,
}

impl Cyclic {
    pub fn new(
        sub: &[Complex64],
        diag: &[Complex64],
        sup: &[Complex64],
        top_right: Complex64,
        bottom_left: Complex64,
    ) -> Result<Self> {
        let n = diag.len();
        if n < 3 {
            return Err(Error::Argument("a cyclic system needs at least 3 unknowns".into()));
        }
        let gamma = -diag[0];
        let mut modified = diag.to_vec();
        modified[0] = diag[0] - gamma;
        modified[n - 1] = diag[n - 1] - top_right * bottom_left / gamma;
        let reduced = Thomas::new(sub, &modified, sup)?;
        let mut correction = alloc::vec![Complex64::new(0.0, 0.0); n];
        correction[0] = gamma;
        correction[n - 1] = bottom_left;
        reduced.solve_rows(&mut correction, 1);
        Ok(Self { reduced, correction, top_right, gamma })
    }

    pub fn solve(&self, x: &mut [Complex64]) {
        let n = x.len();
        self.reduced.solve_rows(x, 1);
        let z = &self.correction;
        let factor = (x[0] + self.top_right * x[n - 1] / self.gamma)
            / (Complex64::new(1.0, 0.0) + z[0] + self.top_right * z[n - 1] / self.gamma);
        for (xi, &zi) in x.iter_mut().zip(z) {
            *xi -= factor * zi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn matvec(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut v = diag[i] * x[i];
                if i > 0 {
                    v += sub[i] * x[i - 1];
                }
                if i + 1 < n {
                    v += sup[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    #[test]
    fn thomas_solves_batched_rows() {
        let n = 7;
        let sub: Vec<_> = (0..n).map(|i| c(-1.0, 0.1 * i as f64)).collect();
        let diag: Vec<_> = (0..n).map(|i| c(4.0, 1.0 - 0.2 * i as f64)).collect();
        let sup: Vec<_> = (0..n).map(|_| c(-1.0, -0.3)).map(|v| v * (1.0 + 0.01 * n as f64)).collect();
        let x1: Vec<_> = (0..n).map(|i| c(i as f64, 1.0)).collect();
        let x2: Vec<_> = (0..n).map(|i| c(-1.0, 0.5 * i as f64)).collect();
        let b1 = matvec(&sub, &diag, &sup, &x1);
        let b2 = matvec(&sub, &diag, &sup, &x2);
        let mut data = Vec::new();
        for i in 0..n {
            data.push(b1[i]);
            data.push(b2[i]);
        }
        let solver = Thomas::new(&sub, &diag, &sup).unwrap();
        solver.solve_rows(&mut data, 2);
        for i in 0..n {
            assert!((data[2 * i] - x1[i]).norm() < 1e-13);
            assert!((data[2 * i + 1] - x2[i]).norm() < 1e-13);
        }
    }

    #[test]
    fn cyclic_solve() {
        let n = 9;
        let sub = alloc::vec![c(-1.0, 0.2); n];
        let diag = alloc::vec![c(3.0, 1.0); n];
        let sup = alloc::vec![c(-1.0, 0.2); n];
        let (tr, bl) = (c(-1.0, 0.2), c(-1.0, 0.2));
        let x: Vec<_> = (0..n).map(|i| c(1.0 + i as f64, -(i as f64))).collect();
        let mut b = matvec(&sub, &diag, &sup, &x);
        b[0] += tr * x[n - 1];
        b[n - 1] += bl * x[0];
        let solver = Cyclic::new(&sub, &diag, &sup, tr, bl).unwrap();
        solver.solve(&mut b);
        for i in 0..n {
            assert!((b[i] - x[i]).norm() < 1e-12);
        }
    }
}
