//! JSON config file mirroring the command-line flags. Explicit flags
//! override file values; hard defaults fill the rest.

use crate::{Cli, Settings};
use cl_battery::quadrature::QuadratureConfig;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub gamma: Option<f64>,
    pub omega0: Option<f64>,
    pub omegac: Option<f64>,
    pub temp: Option<f64>,
    pub cutoff: Option<String>,
    pub n: Option<u32>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, String> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

pub fn resolve(cli: &Cli, file: &FileConfig) -> Settings {
    let defaults = QuadratureConfig::default();
    Settings {
        quad: QuadratureConfig {
            rel_tol: cli.rel_tol.or(file.rel_tol).unwrap_or(defaults.rel_tol),
            abs_tol: cli.abs_tol.or(file.abs_tol).unwrap_or(defaults.abs_tol),
            ..defaults
        },
        jobs: cli
            .jobs
            .or(file.jobs)
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|n| n.get())
                    .unwrap_or(1)
            })
            .max(1),
        json: cli.json,
        seed: cli.seed.or(file.seed).unwrap_or(0),
    }
}
