//! `devolve gen-data` — write transform-data files.

use crate::args::{self, GenDataArgs};
use devolve::error::Result;
use devolve::functions::{data, generate_transform_data, write_transform_data, FunctionId};

pub fn execute(args: GenDataArgs) -> Result<()> {
    let dims = args::parse_dim_list(&args.dim)?;
    let functions = match &args.function {
        Some(spec) => args::parse_function_list(spec)?,
        None => FunctionId::all().collect(),
    };
    let mut written = 0usize;
    for &dim in &dims {
        for &id in &functions {
            let transforms = generate_transform_data(args.seed, id, dim)?;
            write_transform_data(&args.out_dir, id, dim, &transforms)?;
            written += data::expected_files(id, dim).len();
        }
    }
    println!(
        "wrote {written} file(s) for {} function(s) at D={{{}}} into {} (seed {})",
        functions.len(),
        dims.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
        args.out_dir.display(),
        args.seed
    );
    Ok(())
}
