//! Subcommand implementations.

pub mod gen_data;
pub mod list;
pub mod rank;
pub mod run;
pub mod trace;

use std::path::PathBuf;

use devolve::error::{Error, Result};
use devolve::functions::{
    data, generate_transform_data, load_transform_data, FunctionId, ObjectiveSpec,
};

/// Resolves --data-dir / --gen-seed / the environment default. A data
/// directory wins; inside a directory, missing files fall back to generation
/// only when a generation seed was also supplied.
pub fn resolve_data_source(
    data_dir: Option<PathBuf>,
    gen_seed: Option<u64>,
) -> Result<(Option<PathBuf>, Option<u64>)> {
    let dir = data_dir.or_else(|| std::env::var_os(crate::args::DATA_DIR_ENV).map(Into::into));
    if dir.is_none() && gen_seed.is_none() {
        return Err(Error::Usage(format!(
            "no transform data: pass --data-dir (or set {}), or pass --gen-seed to \
             generate data on the fly",
            crate::args::DATA_DIR_ENV
        )));
    }
    Ok((dir, gen_seed))
}

/// Builds the objective for one function, loading files when a directory is
/// given and falling back to (or relying on) seeded generation otherwise.
/// Loader warnings are printed to stderr.
pub fn build_spec(
    dir: Option<&PathBuf>,
    gen_seed: Option<u64>,
    id: FunctionId,
    dim: usize,
) -> Result<ObjectiveSpec> {
    if let Some(dir) = dir {
        let missing = data::missing_files(dir, id, dim);
        if missing.is_empty() {
            let (transforms, warnings) = load_transform_data(dir, id, dim)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            return ObjectiveSpec::new(id, dim, transforms);
        }
        if gen_seed.is_none() {
            let list = missing
                .iter()
                .map(|p| p.display().to_string())
                .collect::<Vec<_>>()
                .join("\n  ");
            return Err(Error::Load {
                file: dir.clone(),
                line: 0,
                message: format!(
                    "missing transform-data files (pass --gen-seed to generate):\n  {list}"
                ),
            });
        }
    }
    let seed = gen_seed.expect("resolve() guarantees a source");
    let transforms = generate_transform_data(seed, id, dim)?;
    ObjectiveSpec::new(id, dim, transforms)
}

/// Median of an unsorted sample (even length: lower-middle average).
pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
