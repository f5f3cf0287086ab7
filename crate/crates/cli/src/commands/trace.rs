//! `devolve trace` — per-generation convergence trace for one trial.

use std::io::Write as _;

use crate::args::{self, TraceArgs};
use crate::commands::{build_spec, resolve_data_source};
use devolve::bench::StoppingRule;
use devolve::de::ControlParams;
use devolve::error::Result;
use devolve::exec::{run, DeParams, GenerationEvent, IndexSelection, Problem};
use devolve::functions::FunctionId;

pub fn execute(args: TraceArgs) -> Result<()> {
    let id = FunctionId::new(args.function)?;
    let (dir, gen_seed) = resolve_data_source(args.data_dir.clone(), args.gen_seed)?;
    let spec = build_spec(dir.as_ref(), gen_seed, id, args.dim)?;

    let model = args::parse_model(
        &args.model,
        args.workers,
        args.islands,
        args.migration_interval,
        args.migrants,
    )?;
    let params = DeParams {
        control: ControlParams {
            f: args.f,
            cr: args.cr,
            np: args.np,
        },
        jde: args.jde,
        index_selection: IndexSelection::Rejection,
    };
    let mut rule = StoppingRule::for_dimension(args.dim);
    if let Some(budget) = args.budget {
        rule = rule.with_budget(budget);
    }
    if let Some(te) = args.target_error {
        rule.target_error = te;
    }
    rule.validate()?;

    let stride = args.stride.max(1);
    let mut rows: Vec<(u32, u64, f64, f64)> = Vec::new();
    let mut observer = |ev: &GenerationEvent<'_>| {
        if ev.generation >= 1 && ev.generation.is_multiple_of(stride) {
            rows.push((
                ev.generation,
                ev.fe_count,
                ev.elapsed.as_secs_f64(),
                ev.best_error,
            ));
        }
    };

    let objective = |x: &[f64]| spec.evaluate(x);
    let problem = Problem::new(&objective, spec.dim(), spec.bounds());
    run(&model, &problem, &params, &rule, args.seed, Some(&mut observer))?;

    let mut csv = String::from("generation,fe_count,elapsed_seconds,best_error\n");
    for (gen, fe, secs, err) in rows {
        csv.push_str(&format!("{gen},{fe},{secs:.6},{err:e}\n"));
    }
    match &args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    Ok(())
}
