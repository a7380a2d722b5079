//! File formats and the `cylwave` command-line driver on top of
//! [`cylwave_core`].
//!
//! A run is fully described by a [`RunConfig`]. Every command writes its
//! results plus `<command>.manifest.json`, which echoes the config and the
//! derived constants; passing that manifest back through `--config`
//! reproduces the results byte for byte.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

pub use cli::Cli;
pub use commands::{execute, Command, Outputs};
pub use config::RunConfig;
pub use error::CliError;

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    derived: Derived,
    outputs: Vec<&'a str>,
}

#[derive(Serialize)]
struct Derived {
    q_max: f64,
    carrier_wavenumber: f64,
    k_table: Vec<commands::KRow>,
}

pub fn manifest_name(command: Command) -> String {
    format!("{}.manifest.json", command.name())
}

/// Resolves the config (defaults, then `--config`, then flags), runs the
/// command and writes its files. Returns the paths written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    let mut config = match &cli.common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    cli.apply(&mut config).map_err(CliError::Input)?;
    run_config(cli.command.command(), &config)
}

pub fn run_config(command: Command, config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let outputs = execute(command, config)?;
    let params = config.physical_params()?;
    let manifest = Manifest {
        command: command.name(),
        version: env!("CARGO_PKG_VERSION"),
        config,
        derived: Derived {
            q_max: params.q_max(),
            carrier_wavenumber: params.carrier_wavenumber(),
            k_table: commands::k_table(&params, &outputs.k_table_q)?,
        },
        outputs: outputs.files.iter().map(|(name, _)| name.as_str()).collect(),
    };
    let manifest_text = io::to_json(&manifest)?;

    fs::create_dir_all(&config.output_dir)?;
    let mut written = Vec::new();
    for (name, text) in outputs.files.iter().chain([(manifest_name(command), manifest_text)].iter()) {
        let path = config.output_dir.join(name);
        fs::write(&path, text)?;
        written.push(path);
    }
    match outputs.breach {
        Some(msg) => Err(CliError::Tolerance(msg)),
        None => Ok(written),
    }
}
