use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::PI;
use crate::modes::PhysicalParams;

/// `n` equally spaced points from `min` to `max` inclusive. A single point
/// (`n = 1`) requires `min == max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformGrid {
    min: f64,
    max: f64,
    n: usize,
}

impl UniformGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::Argument(alloc::format!("grid bounds must be finite, got [{min}, {max}]")));
        }
        match n {
            0 => Err(Error::Argument("a grid needs at least one point".into())),
            1 if min != max => {
                Err(Error::Argument(alloc::format!("a one-point grid needs min == max, got [{min}, {max}]")))
            }
            1 => Ok(Self { min, max, n }),
            _ if !(min < max) => Err(Error::Argument(alloc::format!(
                "grid must be strictly increasing, got [{min}, {max}] with {n} points"
            ))),
            _ => Ok(Self { min, max, n }),
        }
    }

    pub fn single(at: f64) -> Result<Self> {
        Self::new(at, at, 1)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Zero for a one-point grid.
    pub fn step(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.max - self.min) / (self.n - 1) as f64
        }
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.max
        } else {
            self.min + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.point(i))
    }

    /// Same spacing and count, moved by `offset`.
    pub fn shifted(&self, offset: f64) -> Result<Self> {
        Self::new(self.min + offset, self.max + offset, self.n)
    }

    /// Trapezoid weights `Δ·{½, 1, …, 1, ½}`.
    pub(crate) fn trapezoid_weights(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n).map(|i| if i == 0 || i + 1 == self.n { 0.5 * h } else { h }).collect()
    }
}

/// `Ψ` sampled on a `(z, r)` grid at one instant, z-major:
/// `values[i * n_r + j] = Ψ(z_i, r_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    values: Vec<Complex64>,
    z_grid: UniformGrid,
    r_grid: UniformGrid,
    time: f64,
    params: PhysicalParams,
}

impl Field {
    pub fn new(
        values: Vec<Complex64>,
        z_grid: UniformGrid,
        r_grid: UniformGrid,
        time: f64,
        params: PhysicalParams,
    ) -> Result<Self> {
        if r_grid.min() != 0.0 {
            return Err(Error::Argument(alloc::format!(
                "the radial grid must start on the axis, got r_min = {}",
                r_grid.min()
            )));
        }
        if values.len() != z_grid.len() * r_grid.len() {
            return Err(Error::Argument(alloc::format!(
                "{} values do not fill a {}x{} grid",
                values.len(),
                z_grid.len(),
                r_grid.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Numerical(alloc::format!("non-finite field value at flat index {bad}")));
        }
        Ok(Self { values, z_grid, r_grid, time, params })
    }

    pub fn zeros(z_grid: UniformGrid, r_grid: UniformGrid, time: f64, params: PhysicalParams) -> Result<Self> {
        let n = z_grid.len() * r_grid.len();
        Self::new(alloc::vec![Complex64::new(0.0, 0.0); n], z_grid, r_grid, time, params)
    }

    /// Samples `f(z, r)` on the grids.
    pub fn from_fn<F>(
        z_grid: UniformGrid,
        r_grid: UniformGrid,
        time: f64,
        params: PhysicalParams,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(f64, f64) -> Complex64,
    {
        let mut values = Vec::with_capacity(z_grid.len() * r_grid.len());
        for z in z_grid.points() {
            for r in r_grid.points() {
                values.push(f(z, r));
            }
        }
        Self::new(values, z_grid, r_grid, time, params)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn z_grid(&self) -> &UniformGrid {
        &self.z_grid
    }

    pub fn r_grid(&self) -> &UniformGrid {
        &self.r_grid
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub(crate) fn set_time(&mut self, time: f64) {
        self.time = time;
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn get(&self, iz: usize, ir: usize) -> Complex64 {
        self.values[iz * self.r_grid.len() + ir]
    }

    /// Row of constant `z_i`.
    pub fn row(&self, iz: usize) -> &[Complex64] {
        let n_r = self.r_grid.len();
        &self.values[iz * n_r..(iz + 1) * n_r]
    }

    /// `(z, r, Ψ)` in storage order.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        let n_r = self.r_grid.len();
        self.values.iter().enumerate().map(move |(k, &v)| (self.z_grid.point(k / n_r), self.r_grid.point(k % n_r), v))
    }

    /// The rectangular block `z ∈ [iz0, iz1)`, `r ∈ [0, ir1)`.
    pub fn sub_field(&self, iz0: usize, iz1: usize, ir1: usize) -> Result<Self> {
        if !(iz0 < iz1 && iz1 <= self.z_grid.len() && ir1 >= 1 && ir1 <= self.r_grid.len()) {
            return Err(Error::Argument(alloc::format!(
                "sub-field z[{iz0}..{iz1}) r[0..{ir1}) does not fit a {}x{} field",
                self.z_grid.len(),
                self.r_grid.len()
            )));
        }
        let z_grid = UniformGrid::new(self.z_grid.point(iz0), self.z_grid.point(iz1 - 1), iz1 - iz0)?;
        let r_grid = UniformGrid::new(0.0, self.r_grid.point(ir1 - 1), ir1)?;
        let mut values = Vec::with_capacity((iz1 - iz0) * ir1);
        for iz in iz0..iz1 {
            values.extend_from_slice(&self.row(iz)[..ir1]);
        }
        Self::new(values, z_grid, r_grid, self.time, self.params)
    }

    pub(crate) fn require_area(&self) -> Result<()> {
        if self.z_grid.len() < 2 || self.r_grid.len() < 2 {
            return Err(Error::Argument(alloc::format!(
                "integrals need at least 2x2 samples, field is {}x{}",
                self.z_grid.len(),
                self.r_grid.len()
            )));
        }
        Ok(())
    }

    /// Trapezoid weights for `2π r dr dz`, z-major like `values`.
    /// `2π` times trapezoid weights in `z` and cell-centred weights in `r`:
    /// each radial sample owns the annulus `[r − Δr/2, r + Δr/2]` clipped
    /// to `[0, r_max]`, giving `Δr²/8` on the axis, `r Δr` inside and
    /// `(r_max/2 − Δr/8) Δr` at the edge. Like the trapezoid rule this is
    /// second order and exact for `∫ r dr`, but it also counts the axis
    /// samples, which are exactly the weights the propagator conserves.
    pub(crate) fn cylinder_weights(&self) -> Vec<f64> {
        let wz = self.z_grid.trapezoid_weights();
        let dr = self.r_grid.step();
        let n_r = self.r_grid.len();
        let wr: Vec<f64> = self
            .r_grid
            .points()
            .enumerate()
            .map(|(j, r)| {
                let annulus = if j == 0 {
                    dr * dr / 8.0
                } else if j + 1 == n_r {
                    (r / 2.0 - dr / 8.0) * dr
                } else {
                    r * dr
                };
                2.0 * PI * annulus
            })
            .collect();
        let mut weights = Vec::with_capacity(wz.len() * wr.len());
        for &a in &wz {
            weights.extend(wr.iter().map(|&b| a * b));
        }
        weights
    }
}

/// `2π ∫∫ |Ψ|² r dr dz` over the field's grids: trapezoid in `z`, annular
/// cells in `r`.
pub fn direct_cylinder_norm(field: &Field) -> Result<f64> {
    field.require_area()?;
    Ok(field.cylinder_weights().iter().zip(field.values()).map(|(w, v)| w * v.norm_sqr()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(UniformGrid::new(0.0, 1.0, 0).is_err());
        assert!(UniformGrid::new(1.0, 1.0, 3).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 1).is_err());
        assert!(UniformGrid::single(0.0).is_ok());
        let g = UniformGrid::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.step(), 0.5);
        assert_eq!(g.point(4), 1.0);
    }

    #[test]
    fn field_requires_axis_start() {
        let z = UniformGrid::new(0.0, 1.0, 2).unwrap();
        let r = UniformGrid::new(0.5, 1.0, 2).unwrap();
        assert!(Field::zeros(z, r, 0.0, PhysicalParams::natural()).is_err());
    }

    #[test]
    fn field_rejects_non_finite() {
        let z = UniformGrid::new(0.0, 1.0, 2).unwrap();
        let r = UniformGrid::new(0.0, 1.0, 2).unwrap();
        let mut v = alloc::vec![Complex64::new(0.0, 0.0); 4];
        v[3] = Complex64::new(f64::NAN, 0.0);
        assert!(Field::new(v, z, r, 0.0, PhysicalParams::natural()).is_err());
    }

    #[test]
    fn norm_of_zero_and_unit_fields() {
        let z = UniformGrid::new(0.0, 1.0, 11).unwrap();
        let r = UniformGrid::new(0.0, 1.0, 11).unwrap();
        let zero = Field::zeros(z, r, 0.0, PhysicalParams::natural()).unwrap();
        assert_eq!(direct_cylinder_norm(&zero).unwrap(), 0.0);
        let one = Field::from_fn(z, r, 0.0, PhysicalParams::natural(), |_, _| Complex64::new(1.0, 0.0)).unwrap();
        assert!((direct_cylinder_norm(&one).unwrap() - PI).abs() < 1e-6);
    }

    #[test]
    fn one_point_field_has_no_area() {
        let z = UniformGrid::single(0.0).unwrap();
        let r = UniformGrid::single(0.0).unwrap();
        let f = Field::zeros(z, r, 0.0, PhysicalParams::natural()).unwrap();
        assert!(direct_cylinder_norm(&f).is_err());
    }

    #[test]
    fn sub_field_keeps_samples() {
        let z = UniformGrid::new(-2.0, 2.0, 9).unwrap();
        let r = UniformGrid::new(0.0, 4.0, 9).unwrap();
        let f = Field::from_fn(z, r, 0.0, PhysicalParams::natural(), Complex64::new).unwrap();
        let s = f.sub_field(2, 7, 5).unwrap();
        assert_eq!(s.z_grid().min(), -1.0);
        assert_eq!(s.r_grid().max(), 2.0);
        assert_eq!(s.get(0, 4), Complex64::new(-1.0, 2.0));
    }
}
