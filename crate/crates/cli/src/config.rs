//! Optional TOML configuration for `run`.
//!
//! Precedence: command-line flags override config-file values, which
//! override built-in defaults (NP=250, F=0.5, CR=0.3, rand/1/bin,
//! sequential model, 30 trials).

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::RunArgs;
use devolve::error::{Error, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub function: Option<String>,
    pub dim: Option<usize>,
    pub model: Option<String>,
    pub workers: Option<usize>,
    pub np: Option<usize>,
    pub f: Option<f64>,
    pub cr: Option<f64>,
    pub jde: Option<bool>,
    pub index_selection: Option<String>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub target_error: Option<f64>,
    pub data_dir: Option<PathBuf>,
    pub gen_seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub accuracy: Option<bool>,
    pub algorithm_id: Option<String>,
    pub islands: Option<usize>,
    pub migration_interval: Option<u64>,
    pub migrants: Option<usize>,
}

pub fn load(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Load {
            file: path.to_path_buf(),
            line: 0,
            message: format!("cannot read config: {e}"),
        })?;
    toml::from_str(&text).map_err(|e| Error::Load {
        file: path.to_path_buf(),
        line: 0,
        message: format!("invalid config: {e}"),
    })
}

/// Applies file values underneath the flags the user did not set.
pub fn merge(mut args: RunArgs, file: FileConfig) -> RunArgs {
    args.function = args.function.or(file.function);
    args.dim = args.dim.or(file.dim);
    args.model = args.model.or(file.model);
    args.workers = args.workers.or(file.workers);
    args.np = args.np.or(file.np);
    args.f = args.f.or(file.f);
    args.cr = args.cr.or(file.cr);
    args.jde = args.jde || file.jde.unwrap_or(false);
    args.index_selection = args.index_selection.or(file.index_selection);
    args.trials = args.trials.or(file.trials);
    args.seed = args.seed.or(file.seed);
    args.budget = args.budget.or(file.budget);
    args.target_error = args.target_error.or(file.target_error);
    args.data_dir = args.data_dir.or(file.data_dir);
    args.gen_seed = args.gen_seed.or(file.gen_seed);
    args.out = args.out.or(file.out);
    args.accuracy = args.accuracy || file.accuracy.unwrap_or(false);
    args.algorithm_id = args.algorithm_id.or(file.algorithm_id);
    args.islands = args.islands.or(file.islands);
    args.migration_interval = args.migration_interval.or(file.migration_interval);
    args.migrants = args.migrants.or(file.migrants);
    args
}
