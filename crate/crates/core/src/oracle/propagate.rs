//! Crank–Nicolson evolution of `Ψ(z, r)` under `H = −(ħ²/2m)(∂z² + ∂r² + (1/r)∂r)`.
//!
//! The step is split into a z-sweep and an r-sweep. The two discrete
//! operators act on different indices with coefficients that depend only on
//! their own index, so they commute and the split adds no error beyond the
//! per-direction Cayley transforms.
//!
//! The radial operator is written in flux form,
//! `[(j+½)(ψ_{j+1} − ψ_j) − (j−½)(ψ_j − ψ_{j−1})] / (j Δr²)`, and on the axis
//! the even ghost point `ψ_{−1} = ψ_1` gives `4(ψ_1 − ψ_0)/Δr²`. That operator
//! is symmetric for the weights `(Δr/8, r_1, r_2, …)`, so each step conserves
//! `Σ w |ψ|²` up to round-off. Those are the radial weights of
//! [`direct_cylinder_norm`].

use alloc::vec::Vec;

use num_complex::Complex64;

use super::tridiag::{Cyclic, Thomas};
use crate::error::{Error, Result};
use crate::math;
use crate::modes::PhysicalParams;
use crate::packets::{direct_cylinder_norm, Field, UniformGrid};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    /// `Ψ = 0` on the z-ends and at `r_max`, with a buffer the packet must
    /// not reach.
    #[default]
    DirichletPadded,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagatorConfig {
    pub dt: f64,
    pub steps: usize,
    pub boundary: Boundary,
    /// Buffer width at each z-end as a fraction of half the z-extent; the
    /// same fraction of `r_max` is the radial buffer.
    pub pad_fraction: f64,
}

impl PropagatorConfig {
    pub fn new(dt: f64, steps: usize, pad_fraction: f64) -> Result<Self> {
        let config = Self { dt, steps, boundary: Boundary::DirichletPadded, pad_fraction };
        config.validate()?;
        Ok(config)
    }

    /// Reaches `duration` exactly with a step no larger than
    /// [`default_time_step`].
    pub fn for_duration(field: &Field, duration: f64, pad_fraction: f64) -> Result<Self> {
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(Error::Configuration(alloc::format!("duration must be > 0, got {duration}")));
        }
        let target = default_time_step(field);
        let steps = libm::ceil(duration / target) as usize;
        Self::new(duration / steps as f64, steps.max(1), pad_fraction)
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.steps as f64
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Configuration(alloc::format!("dt must be > 0, got {}", self.dt)));
        }
        if self.steps == 0 {
            return Err(Error::Configuration("steps must be >= 1".into()));
        }
        if !(self.pad_fraction >= 0.2 && self.pad_fraction < 1.0) {
            return Err(Error::Configuration(alloc::format!(
                "pad_fraction must lie in [0.2, 1), got {}",
                self.pad_fraction
            )));
        }
        Ok(())
    }

    /// `dt · steps · |v| < pad_fraction · (z-extent) / 2`.
    pub fn validate_for(&self, field: &Field) -> Result<()> {
        self.validate()?;
        let z = field.z_grid();
        if z.len() < 5 || field.r_grid().len() < 5 {
            return Err(Error::Configuration(alloc::format!(
                "propagation needs at least 5x5 samples, got {}x{}",
                z.len(),
                field.r_grid().len()
            )));
        }
        let travel = self.duration() * field.params().speed().abs();
        let buffer = self.pad_fraction * (z.max() - z.min()) / 2.0;
        if !(travel < buffer) {
            return Err(Error::Configuration(alloc::format!(
                "the packet travels {travel} but the z buffer is only {buffer} wide"
            )));
        }
        Ok(())
    }

    fn pad_cells(&self, field: &Field) -> (usize, usize) {
        let z = field.z_grid();
        let r = field.r_grid();
        let pad_z = libm::ceil(self.pad_fraction * (z.max() - z.min()) / 2.0 / z.step()) as usize;
        let pad_r = libm::ceil(self.pad_fraction * r.max() / r.step()) as usize;
        (pad_z, pad_r)
    }

    /// Multiplies `field` by a raised-cosine ramp that runs from 1 at the
    /// middle of each buffer to 0 at the wall. Without it the walls cut a
    /// field that has not decayed, and the jump radiates into the interior.
    pub fn taper(&self, field: &mut Field) {
        let z = *field.z_grid();
        let r = *field.r_grid();
        let z_buffer = self.pad_fraction * (z.max() - z.min()) / 2.0;
        let r_buffer = self.pad_fraction * r.max();
        let ramp = |distance_to_wall: f64, buffer: f64| {
            let s = distance_to_wall / (buffer / 2.0);
            if s >= 1.0 {
                1.0
            } else {
                0.5 * (1.0 - math::cos(math::PI * s.max(0.0)))
            }
        };
        let r_ramp: Vec<f64> = r.points().map(|rv| ramp(r.max() - rv, r_buffer)).collect();
        let n_r = r.len();
        for (iz, row) in field.values_mut().chunks_exact_mut(n_r).enumerate() {
            let zv = z.point(iz);
            let wz = ramp((zv - z.min()).min(z.max() - zv), z_buffer);
            for (v, wr) in row.iter_mut().zip(&r_ramp) {
                *v *= wz * wr;
            }
        }
    }

    /// The part of `field` outside the buffers.
    pub fn interior(&self, field: &Field) -> Result<Field> {
        self.interior_shifted(field, 0)
    }

    /// The interior window moved by `cells` z-samples, e.g. to follow a
    /// packet that has travelled `cells · Δz`. The window may reach into a
    /// buffer but not past the untapered inner half of it.
    pub fn interior_shifted(&self, field: &Field, cells: isize) -> Result<Field> {
        let (pad_z, pad_r) = self.pad_cells(field);
        let n_z = field.z_grid().len();
        let n_r = field.r_grid().len();
        if 2 * pad_z + 2 > n_z || pad_r + 2 > n_r {
            return Err(Error::Configuration("buffers leave no interior".into()));
        }
        if 2 * cells.unsigned_abs() > pad_z {
            return Err(Error::Configuration(alloc::format!(
                "a shift of {cells} cells leaves the inner half of the {pad_z}-cell buffer"
            )));
        }
        let start = (pad_z as isize + cells) as usize;
        field.sub_field(start, start + n_z - 2 * pad_z, n_r - pad_r)
    }
}

/// `min(Δz, Δr)² · m / ħ`.
pub fn default_time_step(field: &Field) -> f64 {
    let h = field.z_grid().step().min(field.r_grid().step());
    h * h * field.params().mass() / field.params().hbar()
}

/// Norm bookkeeping for one propagation run. Norms are
/// [`direct_cylinder_norm`] values; the initial one is taken after the
/// buffers have been tapered.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagationSummary {
    pub dt: f64,
    pub steps: usize,
    pub final_time: f64,
    pub initial_norm: f64,
    pub final_norm: f64,
    pub relative_drift: f64,
}

fn relative_change(before: f64, after: f64) -> f64 {
    if before > 0.0 {
        (after - before).abs() / before
    } else {
        after
    }
}

/// Three-point operator `Hψ_i = lower_i ψ_{i−1} + center_i ψ_i + upper_i ψ_{i+1}`
/// with pinned (always zero) rows.
struct ThreePoint {
    lower: Vec<f64>,
    center: Vec<f64>,
    upper: Vec<f64>,
    pinned: Vec<bool>,
}

impl ThreePoint {
    fn axial_dirichlet(n: usize, kappa: f64) -> Self {
        let mut op = Self {
            lower: alloc::vec![-kappa; n],
            center: alloc::vec![2.0 * kappa; n],
            upper: alloc::vec![-kappa; n],
            pinned: alloc::vec![false; n],
        };
        op.pinned[0] = true;
        op.pinned[n - 1] = true;
        op
    }

    fn radial(n: usize, kappa: f64) -> Self {
        let mut op = Self {
            lower: alloc::vec![0.0; n],
            center: alloc::vec![0.0; n],
            upper: alloc::vec![0.0; n],
            pinned: alloc::vec![false; n],
        };
        op.center[0] = 4.0 * kappa;
        op.upper[0] = -4.0 * kappa;
        for j in 1..n - 1 {
            let jf = j as f64;
            op.lower[j] = -kappa * (jf - 0.5) / jf;
            op.center[j] = 2.0 * kappa;
            op.upper[j] = -kappa * (jf + 0.5) / jf;
        }
        op.pinned[n - 1] = true;
        op
    }

    /// `I + iτH` with pinned rows replaced by identity.
    fn implicit(&self, tau: f64) -> Result<Thomas> {
        let n = self.center.len();
        let mut sub = Vec::with_capacity(n);
        let mut diag = Vec::with_capacity(n);
        let mut sup = Vec::with_capacity(n);
        for i in 0..n {
            if self.pinned[i] {
                sub.push(Complex64::new(0.0, 0.0));
                diag.push(Complex64::new(1.0, 0.0));
                sup.push(Complex64::new(0.0, 0.0));
            } else {
                sub.push(Complex64::new(0.0, tau * self.lower[i]));
                diag.push(Complex64::new(1.0, tau * self.center[i]));
                sup.push(Complex64::new(0.0, tau * self.upper[i]));
            }
        }
        Thomas::new(&sub, &diag, &sup)
    }

    /// `dst = (I − iτH) src` row-wise, for `width` interleaved columns.
    fn explicit(&self, tau: f64, src: &[Complex64], dst: &mut [Complex64], width: usize) {
        let n = self.center.len();
        let zero = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let out = &mut dst[i * width..(i + 1) * width];
            if self.pinned[i] {
                out.iter_mut().for_each(|x| *x = zero);
                continue;
            }
            let here = &src[i * width..(i + 1) * width];
            let lower = Complex64::new(0.0, -tau * self.lower[i]);
            let center = Complex64::new(1.0, -tau * self.center[i]);
            let upper = Complex64::new(0.0, -tau * self.upper[i]);
            for k in 0..width {
                let mut v = center * here[k];
                if i > 0 {
                    v += lower * src[(i - 1) * width + k];
                }
                if i + 1 < n {
                    v += upper * src[(i + 1) * width + k];
                }
                out[k] = v;
            }
        }
    }
}

/// Advances `initial` by `config.steps` Crank–Nicolson steps after tapering
/// the buffers with [`PropagatorConfig::taper`].
pub fn propagate(initial: &Field, config: &PropagatorConfig) -> Result<Field> {
    propagate_with_summary(initial, config).map(|(field, _)| field)
}

pub fn propagate_with_summary(initial: &Field, config: &PropagatorConfig) -> Result<(Field, PropagationSummary)> {
    config.validate_for(initial)?;
    let params = *initial.params();
    let n_z = initial.z_grid().len();
    let n_r = initial.r_grid().len();
    let dz = initial.z_grid().step();
    let dr = initial.r_grid().step();
    let kinetic = params.hbar() * params.hbar() / (2.0 * params.mass());
    let tau = config.dt / (2.0 * params.hbar());

    let axial = ThreePoint::axial_dirichlet(n_z, kinetic / (dz * dz));
    let radial = ThreePoint::radial(n_r, kinetic / (dr * dr));
    let axial_solver = axial.implicit(tau)?;
    let radial_solver = radial.implicit(tau)?;

    let mut field = initial.clone();
    config.taper(&mut field);
    {
        let values = field.values_mut();
        let zero = Complex64::new(0.0, 0.0);
        for iz in 0..n_z {
            if iz == 0 || iz == n_z - 1 {
                values[iz * n_r..(iz + 1) * n_r].iter_mut().for_each(|v| *v = zero);
            } else {
                values[iz * n_r + n_r - 1] = zero;
            }
        }
    }
    let initial_norm = direct_cylinder_norm(&field)?;

    let mut scratch = alloc::vec![Complex64::new(0.0, 0.0); n_z * n_r];
    let mut row_scratch = alloc::vec![Complex64::new(0.0, 0.0); n_r];
    for _ in 0..config.steps {
        let values = field.values_mut();
        axial.explicit(tau, values, &mut scratch, n_r);
        axial_solver.solve_rows(&mut scratch, n_r);
        values.copy_from_slice(&scratch);

        for row in values.chunks_exact_mut(n_r) {
            radial.explicit(tau, row, &mut row_scratch, 1);
            radial_solver.solve_rows(&mut row_scratch, 1);
            row.copy_from_slice(&row_scratch);
        }
    }
    if field.values().iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Numerical("propagation produced non-finite values".into()));
    }
    let final_time = initial.time() + config.duration();
    field.set_time(final_time);
    let final_norm = direct_cylinder_norm(&field)?;
    let relative_drift = relative_change(initial_norm, final_norm);
    let summary =
        PropagationSummary { dt: config.dt, steps: config.steps, final_time, initial_norm, final_norm, relative_drift };
    Ok((field, summary))
}

/// Boundary handling for the one-dimensional axial propagator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxialBoundary {
    /// `ψ = 0` at both grid ends.
    Dirichlet,
    /// The grid samples one period: the point after `max` is `min`, so the
    /// period is `n · Δz`.
    Periodic,
}

/// The z-part of the propagator on its own: `iħ ψ_t = −(ħ²/2m) ψ_zz` on a
/// line.
pub fn propagate_axial(
    values: &[Complex64],
    z_grid: &UniformGrid,
    params: &PhysicalParams,
    dt: f64,
    steps: usize,
    boundary: AxialBoundary,
) -> Result<alloc::vec::Vec<Complex64>> {
    let n = z_grid.len();
    if values.len() != n || n < 5 {
        return Err(Error::Argument(alloc::format!(
            "axial propagation needs >= 5 samples matching the grid, got {} for {n}",
            values.len()
        )));
    }
    if !(dt > 0.0) || steps == 0 {
        return Err(Error::Configuration(alloc::format!("need dt > 0 and steps >= 1, got {dt}, {steps}")));
    }
    let dz = z_grid.step();
    let kappa = params.hbar() * params.hbar() / (2.0 * params.mass() * dz * dz);
    let tau = dt / (2.0 * params.hbar());
    let mut psi = values.to_vec();
    let mut rhs = alloc::vec![Complex64::new(0.0, 0.0); n];
    match boundary {
        AxialBoundary::Dirichlet => {
            let op = ThreePoint::axial_dirichlet(n, kappa);
            let solver = op.implicit(tau)?;
            psi[0] = Complex64::new(0.0, 0.0);
            psi[n - 1] = Complex64::new(0.0, 0.0);
            for _ in 0..steps {
                op.explicit(tau, &psi, &mut rhs, 1);
                solver.solve_rows(&mut rhs, 1);
                core::mem::swap(&mut psi, &mut rhs);
            }
        }
        AxialBoundary::Periodic => {
            let off = Complex64::new(0.0, -tau * kappa);
            let diag = Complex64::new(1.0, 2.0 * tau * kappa);
            let solver = Cyclic::new(&alloc::vec![off; n], &alloc::vec![diag; n], &alloc::vec![off; n], off, off)?;
            let e_off = Complex64::new(0.0, tau * kappa);
            let e_diag = Complex64::new(1.0, -2.0 * tau * kappa);
            for _ in 0..steps {
                for i in 0..n {
                    let left = psi[(i + n - 1) % n];
                    let right = psi[(i + 1) % n];
                    rhs[i] = e_diag * psi[i] + e_off * (left + right);
                }
                solver.solve(&mut rhs);
                core::mem::swap(&mut psi, &mut rhs);
            }
        }
    }
    Ok(psi)
}

/// `√(⟨z²⟩ − ⟨z⟩²)` of `|ψ|²` on a line, trapezoid rule.
pub fn axial_width(values: &[Complex64], z_grid: &UniformGrid) -> Result<f64> {
    if values.len() != z_grid.len() || values.len() < 2 {
        return Err(Error::Argument("width needs >= 2 samples matching the grid".into()));
    }
    let weights = z_grid.trapezoid_weights();
    let mut mass = 0.0;
    let mut first = 0.0;
    let mut second = 0.0;
    for ((v, w), z) in values.iter().zip(&weights).zip(z_grid.points()) {
        let density = w * v.norm_sqr();
        mass += density;
        first += density * z;
        second += density * z * z;
    }
    if !(mass > 0.0) {
        return Err(Error::Degenerate("width of a vanishing wave function".into()));
    }
    let mean = first / mass;
    Ok(math::sqrt((second / mass - mean * mean).max(0.0)))
}

/// Largest `|∂Ψ/∂r|` on the axis over all z rows, from the one-sided
/// fourth-order stencil `(−25ψ0 + 48ψ1 − 36ψ2 + 16ψ3 − 3ψ4) / (12Δr)`.
pub fn axis_slope(field: &Field) -> Result<f64> {
    let n_r = field.r_grid().len();
    if n_r < 5 {
        return Err(Error::Argument("axis slope needs at least 5 radial samples".into()));
    }
    let dr = field.r_grid().step();
    let mut worst: f64 = 0.0;
    for iz in 0..field.z_grid().len() {
        let row = field.row(iz);
        let slope = (row[1] * 48.0 - row[0] * 25.0 - row[2] * 36.0 + row[3] * 16.0 - row[4] * 3.0) / (12.0 * dr);
        worst = worst.max(slope.norm());
    }
    Ok(worst)
}
