//! Argument structs and parsing helpers shared by the subcommands.

use std::path::PathBuf;

use devolve::error::{Error, Result};
use devolve::exec::{ExecutionModel, IndexSelection};
use devolve::functions::FunctionId;

/// Environment variable supplying a default transform-data directory.
pub const DATA_DIR_ENV: &str = "DEVOLVE_DATA_DIR";

#[derive(Debug, clap::Args, Clone)]
pub struct RunArgs {
    /// Functions to run, e.g. "1", "1,3,5" or "1-4,8-10". Default: all ten.
    #[arg(long, value_name = "LIST")]
    pub function: Option<String>,

    /// Problem dimension (the proposed benchmark uses 50 and 100).
    #[arg(long)]
    pub dim: Option<usize>,

    /// Execution model: sequential | master-slave | batch-offload | phased |
    /// fused | island.
    #[arg(long)]
    pub model: Option<String>,

    /// Worker threads for master-slave / phased / fused.
    #[arg(long)]
    pub workers: Option<usize>,

    /// Population size NP.
    #[arg(long)]
    pub np: Option<usize>,

    /// Differential weight F.
    #[arg(long)]
    pub f: Option<f64>,

    /// Crossover rate CR.
    #[arg(long)]
    pub cr: Option<f64>,

    /// Self-adapt F and CR per individual (jDE); --f/--cr set the initial values.
    #[arg(long)]
    pub jde: bool,

    /// Trial-index selection: rejection | displacement.
    #[arg(long, value_name = "METHOD")]
    pub index_selection: Option<String>,

    /// Number of trials per (function, algorithm); trial t uses seed+t.
    #[arg(long)]
    pub trials: Option<u32>,

    /// Base seed.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Evaluation budget override (default: 100000 x D).
    #[arg(long)]
    pub budget: Option<u64>,

    /// Early-stop error threshold (default 1e-8).
    #[arg(long)]
    pub target_error: Option<f64>,

    /// Directory holding transform-data files (env: DEVOLVE_DATA_DIR).
    #[arg(long, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,

    /// Generate transform data with this seed instead of loading files.
    #[arg(long, value_name = "SEED")]
    pub gen_seed: Option<u64>,

    /// Results file (JSON lines, append-safe). Default: results.jsonl.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Serialize trials so wall-clock numbers are meaningful (default).
    /// With --accuracy trials run concurrently and only errors matter.
    #[arg(long, conflicts_with = "accuracy")]
    pub timed: bool,

    /// Run trials concurrently; wall-clock fields are not comparable.
    #[arg(long)]
    pub accuracy: bool,

    /// Algorithm label recorded with each trial (default: derived).
    #[arg(long)]
    pub algorithm_id: Option<String>,

    /// Island count (island model).
    #[arg(long)]
    pub islands: Option<usize>,

    /// Generations between migrations (island model).
    #[arg(long)]
    pub migration_interval: Option<u64>,

    /// Individuals migrated per island per migration (island model).
    #[arg(long)]
    pub migrants: Option<usize>,

    /// Optional TOML config file; command-line flags override its values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct GenDataArgs {
    /// Generation seed; the same seed always writes byte-identical files.
    #[arg(long)]
    pub seed: u64,

    /// Dimension(s), e.g. "50" or "50,100".
    #[arg(long, value_name = "LIST", default_value = "50,100")]
    pub dim: String,

    /// Functions to generate, default all ten.
    #[arg(long, value_name = "LIST")]
    pub function: Option<String>,

    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct RankArgs {
    /// Results files (JSON lines) from `devolve run`.
    #[arg(required = true, value_name = "FILE")]
    pub files: Vec<PathBuf>,

    /// Write <PREFIX>.ranks.csv and <PREFIX>.scores.csv.
    #[arg(long, value_name = "PREFIX")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct TraceArgs {
    /// Function to trace (single id).
    #[arg(long)]
    pub function: u8,

    #[arg(long)]
    pub dim: usize,

    /// Execution model (see `run`).
    #[arg(long, default_value = "sequential")]
    pub model: String,

    #[arg(long)]
    pub workers: Option<usize>,

    #[arg(long, default_value_t = 250)]
    pub np: usize,

    #[arg(long, default_value_t = 0.5)]
    pub f: f64,

    #[arg(long, default_value_t = 0.3)]
    pub cr: f64,

    #[arg(long)]
    pub jde: bool,

    #[arg(long)]
    pub seed: u64,

    #[arg(long)]
    pub budget: Option<u64>,

    #[arg(long)]
    pub target_error: Option<f64>,

    /// Emit every Nth generation.
    #[arg(long, default_value_t = 1)]
    pub stride: u32,

    #[arg(long, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,

    #[arg(long, value_name = "SEED")]
    pub gen_seed: Option<u64>,

    /// Output CSV path; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[arg(long)]
    pub islands: Option<usize>,

    #[arg(long)]
    pub migration_interval: Option<u64>,

    #[arg(long)]
    pub migrants: Option<usize>,
}

/// Parses "1,3,5-7" into sorted unique function ids.
pub fn parse_function_list(spec: &str) -> Result<Vec<FunctionId>> {
    let mut ids = std::collections::BTreeSet::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some((lo, hi)) = part.split_once('-') {
            let lo: u8 = parse_id(lo)?;
            let hi: u8 = parse_id(hi)?;
            if lo > hi {
                return Err(Error::Usage(format!("empty function range {part:?}")));
            }
            for id in lo..=hi {
                ids.insert(id);
            }
        } else {
            ids.insert(parse_id(part)?);
        }
    }
    if ids.is_empty() {
        return Err(Error::Usage("no functions selected".into()));
    }
    ids.into_iter().map(FunctionId::new).collect()
}

fn parse_id(tok: &str) -> Result<u8> {
    tok.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("invalid function id {tok:?}")))
}

/// Parses "50,100" into dimensions.
pub fn parse_dim_list(spec: &str) -> Result<Vec<usize>> {
    let mut dims = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        dims.push(
            part.parse()
                .map_err(|_| Error::Usage(format!("invalid dimension {part:?}")))?,
        );
    }
    if dims.is_empty() {
        return Err(Error::Usage("no dimensions given".into()));
    }
    Ok(dims)
}

/// Builds the execution model from its name plus the structural knobs.
pub fn parse_model(
    name: &str,
    workers: Option<usize>,
    islands: Option<usize>,
    migration_interval: Option<u64>,
    migrants: Option<usize>,
) -> Result<ExecutionModel> {
    let default_workers = || {
        workers.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(std::num::NonZeroUsize::get)
                .unwrap_or(1)
        })
    };
    let model = match name.replace('_', "-").as_str() {
        "sequential" => ExecutionModel::Sequential,
        "master-slave" => ExecutionModel::MasterSlave {
            workers: default_workers(),
        },
        "batch-offload" => ExecutionModel::BatchOffload,
        "phased" => ExecutionModel::Phased {
            workers: default_workers(),
        },
        "fused" => ExecutionModel::Fused {
            workers: default_workers(),
        },
        "island" => ExecutionModel::Island {
            islands: islands.unwrap_or(4),
            migration_interval: migration_interval.unwrap_or(50),
            migrants: migrants.unwrap_or(1),
        },
        other => {
            return Err(Error::Usage(format!(
                "unknown model {other:?} (expected sequential, master-slave, \
                 batch-offload, phased, fused, or island)"
            )))
        }
    };
    Ok(model)
}

pub fn parse_index_selection(name: &str) -> Result<IndexSelection> {
    match name {
        "rejection" => Ok(IndexSelection::Rejection),
        "displacement" => Ok(IndexSelection::Displacement),
        other => Err(Error::Usage(format!(
            "unknown index selection {other:?} (expected rejection or displacement)"
        ))),
    }
}
