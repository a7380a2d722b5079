//! Run configuration. Loaded from a JSON document (or the `config` key of a
//! run manifest), then overridden by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use cylwave_core::modes::{Mode, PhysicalParams};
use cylwave_core::packets::{NormMeasure, SpectralWeights, UniformGrid};
use cylwave_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::read_weights_table;

/// `[re, im]`
pub type ComplexPair = [f64; 2];

fn complex(pair: ComplexPair) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsConfig,
    pub weights: WeightsConfig,
    pub grid: GridConfig,
    /// Gauss–Legendre nodes in the spectral integral.
    pub nodes: usize,
    pub time: f64,
    pub mode: ModeConfig,
    pub residual: ResidualConfig,
    pub norm_scan: NormScanConfig,
    pub propagator: PropagatorSettings,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: ParamsConfig::default(),
            weights: WeightsConfig::default(),
            grid: GridConfig::default(),
            nodes: 128,
            time: 1.0,
            mode: ModeConfig::default(),
            residual: ResidualConfig::default(),
            norm_scan: NormScanConfig::default(),
            propagator: PropagatorSettings::default(),
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Reads either a bare config or a manifest carrying one under `config`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        let mut value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("config {} is not valid JSON: {e}", path.display())))?;
        if let Some(inner) = value.get_mut("config").filter(|v| v.is_object()) {
            value = inner.take();
        }
        serde_json::from_value(value).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }

    pub fn physical_params(&self) -> Result<PhysicalParams, CliError> {
        Ok(PhysicalParams::new(self.params.mass, self.params.speed, self.params.hbar)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub mass: f64,
    pub speed: f64,
    pub hbar: f64,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        Self { mass: 1.0, speed: 1.0, hbar: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightsConfig {
    /// `A = amp_a q^s e^{−βq}`, `B = amp_b q^s e^{−βq}`.
    PowerExp { amp_a: ComplexPair, amp_b: ComplexPair, exponent: f64, decay: f64 },
    /// A whitespace-separated table, see [`crate::io::read_weights_table`].
    Table { path: PathBuf },
}

impl Default for WeightsConfig {
    fn default() -> Self {
        Self::PowerExp { amp_a: [1.0, 0.0], amp_b: [1.0, 0.0], exponent: 1.0, decay: 2.0 }
    }
}

impl WeightsConfig {
    pub fn build(&self) -> Result<SpectralWeights, CliError> {
        match self {
            Self::PowerExp { amp_a, amp_b, exponent, decay } => {
                Ok(SpectralWeights::power_exp(complex(*amp_a), complex(*amp_b), *exponent, *decay)?)
            }
            Self::Table { path } => Ok(SpectralWeights::tabulated(read_weights_table(path)?)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub z_min: f64,
    pub z_max: f64,
    pub n_z: usize,
    pub r_max: f64,
    pub n_r: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { z_min: -20.0, z_max: 20.0, n_z: 401, r_max: 20.0, n_r: 201 }
    }
}

impl GridConfig {
    pub fn build(&self) -> Result<(UniformGrid, UniformGrid), CliError> {
        Ok((UniformGrid::new(self.z_min, self.z_max, self.n_z)?, UniformGrid::new(0.0, self.r_max, self.n_r)?))
    }
}

/// A single bounded mode; `c4` is always zero here.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModeConfig {
    pub q: f64,
    pub c1: ComplexPair,
    pub c2: ComplexPair,
    pub c3: ComplexPair,
}

impl Default for ModeConfig {
    fn default() -> Self {
        Self { q: 0.0, c1: [0.0, 0.0], c2: [1.0, 0.0], c3: [1.0, 0.0] }
    }
}

impl ModeConfig {
    pub fn build(&self, params: &PhysicalParams) -> Result<Mode, CliError> {
        Ok(Mode::new(params, self.q, complex(self.c1), complex(self.c2), complex(self.c3))?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ResidualTarget {
    Mode,
    Packet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResidualConfig {
    pub target: ResidualTarget,
    /// `[Δz, Δr, Δt]`; the report is repeated with every step halved.
    pub steps: [f64; 3],
    /// Random probes drawn from the grid box with `seed`; `None` probes
    /// every grid point.
    pub random_probes: Option<usize>,
}

impl Default for ResidualConfig {
    fn default() -> Self {
        Self { target: ResidualTarget::Packet, steps: [1e-3; 3], random_probes: Some(256) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MeasureName {
    DqOverQ,
    TwiceDq,
}

impl From<MeasureName> for NormMeasure {
    fn from(m: MeasureName) -> Self {
        match m {
            MeasureName::DqOverQ => NormMeasure::DqOverQ,
            MeasureName::TwiceDq => NormMeasure::TwiceDq,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormScanConfig {
    pub half_lengths: Vec<f64>,
    pub n_q: usize,
    pub n_z: usize,
    pub measure: MeasureName,
}

impl Default for NormScanConfig {
    fn default() -> Self {
        Self {
            half_lengths: vec![50.0, 100.0, 150.0, 200.0, 300.0, 400.0],
            n_q: 1024,
            n_z: 2048,
            measure: MeasureName::DqOverQ,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagatorSettings {
    /// `None` picks `min(Δz, Δr)² m / ħ`.
    pub dt: Option<f64>,
    pub pad_fraction: f64,
    /// Width of the 1-D Gaussian comparator.
    pub sigma0: f64,
    pub gaussian_half_width: f64,
    pub gaussian_points: usize,
}

impl Default for PropagatorSettings {
    fn default() -> Self {
        Self { dt: None, pad_fraction: 0.4, sigma0: 1.0, gaussian_half_width: 40.0, gaussian_points: 1601 }
    }
}
