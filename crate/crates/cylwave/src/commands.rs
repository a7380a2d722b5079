//! The five experiments. Each builds its output files in memory; [`crate::run`]
//! writes them next to a manifest.

use std::fmt::Write as _;

use cylwave_core::modes::{axial_wavenumbers, eval_mode, PhysicalParams};
use cylwave_core::oracle::{
    axial_width, axis_slope, gaussian_comparator, gaussian_packet, observed_order, overlap, propagate_axial,
    propagate_with_summary, schrodinger_residual, AxialBoundary, PropagationSummary, PropagatorConfig, ResidualReport,
};
use cylwave_core::packets::{direct_cylinder_norm, norm_scan_with, Packet, UniformGrid};
use cylwave_core::{Complex64, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{ResidualTarget, RunConfig};
use crate::error::CliError;
use crate::io::{fmt_f64, to_json, write_field_csv};

/// Relative norm drift above which a propagation run is a numerical failure.
pub const DRIFT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ModeEval,
    PacketField,
    Residual,
    NormScan,
    PropagateCompare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::ModeEval => "mode-eval",
            Self::PacketField => "packet-field",
            Self::Residual => "residual",
            Self::NormScan => "norm-scan",
            Self::PropagateCompare => "propagate-compare",
        }
    }
}

/// Named file contents, plus a tolerance breach to report after writing.
#[derive(Debug, Default)]
pub struct Outputs {
    pub files: Vec<(String, String)>,
    pub k_table_q: Vec<f64>,
    pub breach: Option<String>,
}

pub fn execute(command: Command, config: &RunConfig) -> Result<Outputs, CliError> {
    match command {
        Command::ModeEval => mode_eval(config),
        Command::PacketField => packet_field(config),
        Command::Residual => residual(config),
        Command::NormScan => norm_scan(config),
        Command::PropagateCompare => propagate_compare(config),
    }
}

fn field_comments(command: Command, params: &PhysicalParams, field: &Field) -> Vec<String> {
    let (zg, rg) = (field.z_grid(), field.r_grid());
    vec![
        format!("cylwave {}", command.name()),
        format!("t = {}", fmt_f64(field.time())),
        format!("q_max = {}", fmt_f64(params.q_max())),
        format!("z in [{}, {}], n = {}", fmt_f64(zg.min()), fmt_f64(zg.max()), zg.len()),
        format!("r in [{}, {}], n = {}", fmt_f64(rg.min()), fmt_f64(rg.max()), rg.len()),
    ]
}

fn field_csv(command: Command, params: &PhysicalParams, field: &Field) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_field_csv(&mut buf, &field_comments(command, params, field), field)?;
    Ok(String::from_utf8(buf).expect("CSV is ASCII"))
}

fn mode_eval(config: &RunConfig) -> Result<Outputs, CliError> {
    let params = config.physical_params()?;
    let mode = config.mode.build(&params)?;
    let (zg, rg) = config.grid.build()?;
    let mut values = Vec::with_capacity(zg.len() * rg.len());
    for z in zg.points() {
        for r in rg.points() {
            values.push(eval_mode(&params, &mode, z, r, config.time)?);
        }
    }
    let field = Field::new(values, zg, rg, config.time, params)?;
    Ok(Outputs {
        files: vec![("mode-eval.csv".into(), field_csv(Command::ModeEval, &params, &field)?)],
        k_table_q: vec![config.mode.q],
        breach: None,
    })
}

fn packet_field(config: &RunConfig) -> Result<Outputs, CliError> {
    let params = config.physical_params()?;
    let packet = Packet::new(&params, &config.weights.build()?, config.nodes)?;
    let (zg, rg) = config.grid.build()?;
    let field = packet.eval_grid(&zg, &rg, config.time)?;
    Ok(Outputs {
        files: vec![("packet-field.csv".into(), field_csv(Command::PacketField, &params, &field)?)],
        ..Outputs::default()
    })
}

#[derive(Serialize)]
struct ReportRecord {
    max_abs: f64,
    rms: f64,
    scale: f64,
    grid_step: [f64; 3],
}

impl From<ResidualReport> for ReportRecord {
    fn from(r: ResidualReport) -> Self {
        Self {
            max_abs: r.max_abs,
            rms: r.rms,
            scale: r.scale,
            grid_step: [r.grid_step.0, r.grid_step.1, r.grid_step.2],
        }
    }
}

#[derive(Serialize)]
struct ResidualRecord {
    target: ResidualTarget,
    t: f64,
    probes: usize,
    report: ReportRecord,
    max_rel: f64,
    rms_rel: f64,
    halved: ReportRecord,
    halved_max_rel: f64,
    ratio: f64,
    observed_order: f64,
}

/// Probe points: the whole grid, or `n` uniform draws from its box. A draw
/// closer to the axis than two radial steps is moved onto it.
fn residual_probes(config: &RunConfig, zg: &UniformGrid, rg: &UniformGrid) -> Vec<(f64, f64)> {
    match config.residual.random_probes {
        None => zg.points().flat_map(|z| rg.points().map(move |r| (z, r))).collect(),
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let axis = 2.0 * config.residual.steps[1];
            (0..n)
                .map(|_| {
                    let z = rng.gen_range(zg.min()..=zg.max());
                    let r = rng.gen_range(0.0..=rg.max());
                    (z, if r < axis { 0.0 } else { r })
                })
                .collect()
        }
    }
}

fn residual(config: &RunConfig) -> Result<Outputs, CliError> {
    let params = config.physical_params()?;
    let (zg, rg) = config.grid.build()?;
    let probes = residual_probes(config, &zg, &rg);
    let [dz, dr, dt] = config.residual.steps;
    let t = config.time;
    let (coarse, fine) = match config.residual.target {
        ResidualTarget::Mode => {
            let mode = config.mode.build(&params)?;
            let sample = |z: f64, r: f64, t: f64| eval_mode(&params, &mode, z, r, t);
            (
                schrodinger_residual(&params, sample, &probes, t, (dz, dr, dt))?,
                schrodinger_residual(&params, sample, &probes, t, (dz / 2.0, dr / 2.0, dt / 2.0))?,
            )
        }
        ResidualTarget::Packet => {
            let packet = Packet::new(&params, &config.weights.build()?, config.nodes)?;
            let sample = |z: f64, r: f64, t: f64| Ok(packet.eval(z, r, t));
            (
                schrodinger_residual(&params, sample, &probes, t, (dz, dr, dt))?,
                schrodinger_residual(&params, sample, &probes, t, (dz / 2.0, dr / 2.0, dt / 2.0))?,
            )
        }
    };
    let record = ResidualRecord {
        target: config.residual.target,
        t,
        probes: probes.len(),
        max_rel: coarse.max_rel(),
        rms_rel: coarse.rms_rel(),
        halved_max_rel: fine.max_rel(),
        ratio: coarse.max_abs / fine.max_abs,
        observed_order: observed_order(&coarse, &fine),
        report: coarse.into(),
        halved: fine.into(),
    };
    let k_table_q = match config.residual.target {
        ResidualTarget::Mode => vec![config.mode.q],
        ResidualTarget::Packet => Vec::new(),
    };
    Ok(Outputs { files: vec![("residual.json".into(), to_json(&record)?)], k_table_q, breach: None })
}

#[derive(Serialize)]
struct NormScanRecord {
    measure: crate::config::MeasureName,
    half_lengths: Vec<f64>,
    norms: Vec<f64>,
    slope: f64,
    intercept: f64,
    r_squared: f64,
    /// `[Z, N(2Z)/N(Z)]`
    doubling_ratios: Vec<[f64; 2]>,
}

fn norm_scan(config: &RunConfig) -> Result<Outputs, CliError> {
    let params = config.physical_params()?;
    let weights = config.weights.build()?;
    let scan_cfg = &config.norm_scan;
    let scan =
        norm_scan_with(&params, &weights, &scan_cfg.half_lengths, scan_cfg.n_q, scan_cfg.n_z, scan_cfg.measure.into())?;
    let mut csv = String::new();
    let _ = writeln!(csv, "# cylwave norm-scan");
    let _ = writeln!(csv, "# q_max = {}", fmt_f64(params.q_max()));
    let _ = writeln!(csv, "# n_q = {}, n_z = {}", scan_cfg.n_q, scan_cfg.n_z);
    let _ = writeln!(csv, "half_length,norm");
    for (z, n) in scan.half_lengths.iter().zip(&scan.norms) {
        let _ = writeln!(csv, "{},{}", fmt_f64(*z), fmt_f64(*n));
    }
    let record = NormScanRecord {
        measure: scan_cfg.measure,
        doubling_ratios: scan.doubling_ratios().into_iter().map(|(z, r)| [z, r]).collect(),
        half_lengths: scan.half_lengths,
        norms: scan.norms,
        slope: scan.slope,
        intercept: scan.intercept,
        r_squared: scan.r_squared,
    };
    Ok(Outputs {
        files: vec![("norm-scan.csv".into(), csv), ("norm-scan.json".into(), to_json(&record)?)],
        ..Outputs::default()
    })
}

#[derive(Serialize)]
struct SummaryRecord {
    dt: f64,
    steps: usize,
    final_time: f64,
    initial_norm: f64,
    final_norm: f64,
    relative_drift: f64,
}

impl From<PropagationSummary> for SummaryRecord {
    fn from(s: PropagationSummary) -> Self {
        Self {
            dt: s.dt,
            steps: s.steps,
            final_time: s.final_time,
            initial_norm: s.initial_norm,
            final_norm: s.final_norm,
            relative_drift: s.relative_drift,
        }
    }
}

#[derive(Serialize)]
struct CompareRecord {
    t: f64,
    overlap_dispersionless: f64,
    /// `[re, im]` of the normalized overlap.
    overlap_phase: [f64; 2],
    /// Interior norm of a window following the packet, relative to the
    /// initial one; present when `v t` is a whole number of axial cells.
    comoving_norm_drift: Option<f64>,
    axis_slope_relative: f64,
    summary: Option<SummaryRecord>,
    gaussian_width_measured: f64,
    gaussian_width_predicted: f64,
    gaussian_width_ratio: f64,
    gaussian_steps: usize,
}

/// `steps = ⌈t / dt⌉`, then `dt` shrunk so the run ends exactly at `t`.
fn fitted_steps(t: f64, dt: f64) -> (f64, usize) {
    let steps = (t / dt).ceil().max(1.0) as usize;
    (t / steps as f64, steps)
}

fn propagate_compare(config: &RunConfig) -> Result<Outputs, CliError> {
    let params = config.physical_params()?;
    let settings = &config.propagator;
    let t = config.time;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(CliError::Input(format!("propagation time must be finite and >= 0, got {t}")));
    }
    let packet = Packet::new(&params, &config.weights.build()?, config.nodes)?;
    let (zg, rg) = config.grid.build()?;
    let initial = packet.eval_grid(&zg, &rg, 0.0)?;

    let (o, comoving, slope, summary) = if t == 0.0 {
        let o = overlap(&initial, &initial)?;
        let scale = initial.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let slope = axis_slope(&initial)?;
        (o, Some(0.0), if scale > 0.0 { slope / scale } else { slope }, None)
    } else {
        let prop = match settings.dt {
            Some(dt) => {
                let (dt, steps) = fitted_steps(t, dt);
                PropagatorConfig::new(dt, steps, settings.pad_fraction)?
            }
            None => PropagatorConfig::for_duration(&initial, t, settings.pad_fraction)?,
        };
        let (evolved, summary) = propagate_with_summary(&initial, &prop)?;
        let exact = packet.eval_grid(&zg, &rg, summary.final_time)?;
        let o = overlap(&prop.interior(&evolved)?, &prop.interior(&exact)?)?;
        let cells = params.speed() * summary.final_time / zg.step();
        let comoving = if (cells - cells.round()).abs() < 1e-9 {
            let before = direct_cylinder_norm(&prop.interior(&initial)?)?;
            let after = direct_cylinder_norm(&prop.interior_shifted(&evolved, cells.round() as isize)?)?;
            Some((after - before) / before)
        } else {
            None
        };
        let scale = evolved.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let slope = axis_slope(&prop.interior(&evolved)?)?;
        (o, comoving, if scale > 0.0 { slope / scale } else { slope }, Some(summary))
    };

    let gz = UniformGrid::new(-settings.gaussian_half_width, settings.gaussian_half_width, settings.gaussian_points)?;
    let start: Vec<Complex64> = gz.points().map(|z| gaussian_packet(z, settings.sigma0, 0.0, 0.0)).collect();
    let (end, gaussian_steps) = if t == 0.0 {
        (start, 0)
    } else {
        let dt = settings.dt.unwrap_or(gz.step() * gz.step() * params.mass() / params.hbar());
        let (dt, steps) = fitted_steps(t, dt);
        (propagate_axial(&start, &gz, &params, dt, steps, AxialBoundary::Dirichlet)?, steps)
    };
    let measured = axial_width(&end, &gz)?;
    let predicted = gaussian_comparator(settings.sigma0, &params, t)?;

    let breach = summary
        .filter(|s| !(s.relative_drift < DRIFT_TOLERANCE))
        .map(|s| format!("propagator norm drift {} exceeds {DRIFT_TOLERANCE}", s.relative_drift));
    let record = CompareRecord {
        t,
        overlap_dispersionless: o.norm(),
        overlap_phase: [o.re, o.im],
        comoving_norm_drift: comoving,
        axis_slope_relative: slope,
        summary: summary.map(Into::into),
        gaussian_width_measured: measured,
        gaussian_width_predicted: predicted,
        gaussian_width_ratio: measured / predicted,
        gaussian_steps,
    };
    Ok(Outputs { files: vec![("propagate-compare.json".into(), to_json(&record)?)], k_table_q: Vec::new(), breach })
}

#[derive(Serialize)]
pub struct KRow {
    pub q: f64,
    pub k_plus: f64,
    pub k_minus: f64,
}

/// The requested `q` values, or nine evenly spaced across the window.
pub fn k_table(params: &PhysicalParams, requested: &[f64]) -> Result<Vec<KRow>, CliError> {
    let qs: Vec<f64> = if requested.is_empty() {
        (0..=8).map(|i| params.q_max() * i as f64 / 8.0).collect()
    } else {
        requested.to_vec()
    };
    qs.into_iter()
        .map(|q| {
            let k = axial_wavenumbers(params, q)?;
            Ok(KRow { q, k_plus: k.k_plus, k_minus: k.k_minus })
        })
        .collect()
}
