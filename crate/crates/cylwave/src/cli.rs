use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::Command;
use crate::config::{ComplexPair, MeasureName, ResidualTarget, RunConfig, WeightsConfig};

#[derive(Debug, Parser)]
#[command(
    name = "cylwave",
    version,
    about = "Dispersionless cylindrical wave packets: sampling, residuals, norms, propagation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Sample one separable mode on the grid.
    ModeEval(ModeArgs),
    /// Sample the spectral superposition on the grid at time `--time`.
    PacketField,
    /// Finite-difference Schrödinger residual at two step sizes.
    Residual(ResidualArgs),
    /// Window norm N(Z) over a list of half-lengths, with a linear fit.
    NormScan(NormScanArgs),
    /// Crank–Nicolson evolution against rigid translation and a Gaussian.
    PropagateCompare(PropagateArgs),
}

impl CommandArgs {
    pub fn command(&self) -> Command {
        match self {
            Self::ModeEval(_) => Command::ModeEval,
            Self::PacketField => Command::PacketField,
            Self::Residual(_) => Command::Residual,
            Self::NormScan(_) => Command::NormScan,
            Self::PropagateCompare(_) => Command::PropagateCompare,
        }
    }
}

/// `re` or `re,im`.
fn parse_complex(s: &str) -> Result<ComplexPair, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok([parse(re)?, 0.0]),
        [re, im] => Ok([parse(re)?, parse(im)?]),
        _ => Err(format!("expected `re` or `re,im`, got {s:?}")),
    }
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// JSON config, or a manifest from an earlier run.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub speed: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    /// Gauss–Legendre nodes in the spectral integral.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub time: Option<f64>,

    #[arg(long, global = true, allow_negative_numbers = true)]
    pub z_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub z_max: Option<f64>,
    #[arg(long, global = true)]
    pub nz: Option<usize>,
    #[arg(long, global = true)]
    pub r_max: Option<f64>,
    #[arg(long, global = true)]
    pub nr: Option<usize>,

    /// Power-exp weights: `A = amp_a q^s e^{-βq}`.
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    pub amp_a: Option<ComplexPair>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    pub amp_b: Option<ComplexPair>,
    /// Power-exp exponent `s`.
    #[arg(long, global = true)]
    pub exponent: Option<f64>,
    /// Power-exp decay `β`.
    #[arg(long, global = true)]
    pub decay: Option<f64>,
    /// Read weights from a five-column table instead.
    #[arg(long, global = true, conflicts_with_all = ["amp_a", "amp_b", "exponent", "decay"])]
    pub weights_table: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct ModeArgs {
    /// Separation constant, within `[0, (m v / ħ)²]`.
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c1: Option<ComplexPair>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c2: Option<ComplexPair>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c3: Option<ComplexPair>,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[arg(long, value_enum)]
    pub target: Option<ResidualTarget>,
    /// `h` for all three, or `dz,dr,dt`.
    #[arg(long, value_delimiter = ',')]
    pub steps: Option<Vec<f64>>,
    /// Number of seeded random probes.
    #[arg(long, conflicts_with = "all_probes")]
    pub random_probes: Option<usize>,
    /// Probe every grid point.
    #[arg(long)]
    pub all_probes: bool,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Args)]
pub struct NormScanArgs {
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    pub half_lengths: Option<Vec<f64>>,
    #[arg(long)]
    pub n_q: Option<usize>,
    /// Quadrature nodes along z.
    #[arg(long)]
    pub n_z: Option<usize>,
    #[arg(long, value_enum)]
    pub measure: Option<MeasureName>,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub pad_fraction: Option<f64>,
    #[arg(long)]
    pub sigma0: Option<f64>,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl ModeArgs {
    fn apply(&self, config: &mut RunConfig) {
        set(&mut config.mode.q, self.q);
        set(&mut config.mode.c1, self.c1);
        set(&mut config.mode.c2, self.c2);
        set(&mut config.mode.c3, self.c3);
    }
}

impl Cli {
    /// Flags override whatever `config` holds.
    pub fn apply(&self, config: &mut RunConfig) -> Result<(), String> {
        let c = &self.common;
        set(&mut config.output_dir, c.out.clone());
        set(&mut config.params.mass, c.mass);
        set(&mut config.params.speed, c.speed);
        set(&mut config.params.hbar, c.hbar);
        set(&mut config.nodes, c.nodes);
        set(&mut config.seed, c.seed);
        set(&mut config.time, c.time);
        set(&mut config.grid.z_min, c.z_min);
        set(&mut config.grid.z_max, c.z_max);
        set(&mut config.grid.n_z, c.nz);
        set(&mut config.grid.r_max, c.r_max);
        set(&mut config.grid.n_r, c.nr);

        if let Some(path) = &c.weights_table {
            config.weights = WeightsConfig::Table { path: path.clone() };
        } else if c.amp_a.is_some() || c.amp_b.is_some() || c.exponent.is_some() || c.decay.is_some() {
            let (mut a, mut b, mut s, mut beta) = match &config.weights {
                WeightsConfig::PowerExp { amp_a, amp_b, exponent, decay } => (*amp_a, *amp_b, *exponent, *decay),
                WeightsConfig::Table { .. } => match WeightsConfig::default() {
                    WeightsConfig::PowerExp { amp_a, amp_b, exponent, decay } => (amp_a, amp_b, exponent, decay),
                    WeightsConfig::Table { .. } => unreachable!(),
                },
            };
            set(&mut a, c.amp_a);
            set(&mut b, c.amp_b);
            set(&mut s, c.exponent);
            set(&mut beta, c.decay);
            config.weights = WeightsConfig::PowerExp { amp_a: a, amp_b: b, exponent: s, decay: beta };
        }

        match &self.command {
            CommandArgs::ModeEval(m) => m.apply(config),
            CommandArgs::PacketField => {}
            CommandArgs::Residual(r) => {
                r.mode.apply(config);
                set(&mut config.residual.target, r.target);
                if let Some(steps) = &r.steps {
                    config.residual.steps = match steps.as_slice() {
                        [h] => [*h; 3],
                        [dz, dr, dt] => [*dz, *dr, *dt],
                        _ => return Err(format!("--steps takes 1 or 3 values, got {}", steps.len())),
                    };
                }
                if r.all_probes {
                    config.residual.random_probes = None;
                } else if r.random_probes.is_some() {
                    config.residual.random_probes = r.random_probes;
                }
            }
            CommandArgs::NormScan(n) => {
                set(&mut config.norm_scan.half_lengths, n.half_lengths.clone());
                set(&mut config.norm_scan.n_q, n.n_q);
                set(&mut config.norm_scan.n_z, n.n_z);
                set(&mut config.norm_scan.measure, n.measure);
            }
            CommandArgs::PropagateCompare(p) => {
                if p.dt.is_some() {
                    config.propagator.dt = p.dt;
                }
                set(&mut config.propagator.pad_fraction, p.pad_fraction);
                set(&mut config.propagator.sigma0, p.sigma0);
            }
        }
        Ok(())
    }
}
