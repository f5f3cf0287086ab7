//! `devolve run` — execute seeded trials and stream records to disk.

use std::collections::BTreeMap;

use crate::args::{self, RunArgs};
use crate::commands::{build_spec, median, resolve_data_source};
use crate::config;
use devolve::bench::{
    run_trials, AlgorithmConfig, ResultsFile, StoppingRule, TrialMode, TrialPlan, TrialRecord,
};
use devolve::de::ControlParams;
use devolve::error::Result;
use devolve::exec::{DeParams, IndexSelection};
use devolve::functions::{FunctionId, ObjectiveSpec};

pub fn execute(mut args: RunArgs) -> Result<()> {
    if let Some(path) = args.config.take() {
        let file = config::load(&path)?;
        args = config::merge(args, file);
    }

    // Defaults follow the benchmark's fixed-parameter setup:
    // NP=250, F=0.5, CR=0.3, rand/1/bin.
    let functions = match &args.function {
        Some(spec) => args::parse_function_list(spec)?,
        None => FunctionId::all().collect(),
    };
    let dim = args.dim.unwrap_or(50);
    let np = args.np.unwrap_or(250);
    let f = args.f.unwrap_or(0.5);
    let cr = args.cr.unwrap_or(0.3);
    let trials = args.trials.unwrap_or(30);
    let base_seed = args.seed.unwrap_or(1);
    let model_name = args.model.as_deref().unwrap_or("sequential");
    let model = args::parse_model(
        model_name,
        args.workers,
        args.islands,
        args.migration_interval,
        args.migrants,
    )?;
    let index_selection = match &args.index_selection {
        Some(name) => args::parse_index_selection(name)?,
        None => IndexSelection::Rejection,
    };

    let params = DeParams {
        control: ControlParams { f, cr, np },
        jde: args.jde,
        index_selection,
    };
    params.validate()?;
    model.validate(np)?;

    let mut rule = StoppingRule::for_dimension(dim);
    if let Some(budget) = args.budget {
        rule = rule.with_budget(budget);
    }
    if let Some(te) = args.target_error {
        rule.target_error = te;
    }
    rule.validate()?;

    let (dir, gen_seed) = resolve_data_source(args.data_dir.clone(), args.gen_seed)?;
    let specs: Vec<ObjectiveSpec> = functions
        .iter()
        .map(|&id| build_spec(dir.as_ref(), gen_seed, id, dim))
        .collect::<Result<_>>()?;

    let algorithm_id = args.algorithm_id.clone().unwrap_or_else(|| {
        format!(
            "{}-np{np}-{}",
            if args.jde { "jde" } else { "de" },
            model.label()
        )
    });
    let algorithms = [AlgorithmConfig {
        id: algorithm_id.clone(),
        model,
        params,
    }];

    let out = args
        .out
        .clone()
        .unwrap_or_else(|| std::path::PathBuf::from("results.jsonl"));
    let sink = ResultsFile::new(&out);
    if let (_, Some(warning)) = sink.load_resumable()? {
        eprintln!("warning: {warning}");
    }

    let mode = if args.accuracy {
        TrialMode::Accuracy
    } else {
        TrialMode::Timed
    };
    let plan = TrialPlan {
        algorithms: &algorithms,
        functions: &specs,
        n_trials: trials,
        base_seed,
        rule: Some(rule),
        mode,
    };

    eprintln!(
        "running {} trial(s) x {} function(s), D={dim}, NP={np}, F={f}, CR={cr}{}, \
         model {}, budget {} FEs, seed {base_seed} -> {}",
        trials,
        specs.len(),
        if args.jde { ", jDE" } else { "" },
        model.label(),
        rule.max_fes,
        out.display()
    );
    let records = run_trials(&plan, Some(&sink))?;

    print!("{}", summary_table(&records, trials));
    Ok(())
}

/// Per-function medians in record order.
fn summary_table(records: &[TrialRecord], trials: u32) -> String {
    let mut by_function: BTreeMap<u8, Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        by_function.entry(r.function_id).or_default().push(r);
    }
    let mut out = format!(
        "{:>4}  {:>13}  {:>12}  {:>9}\n",
        "fn", "median_error", "median_sec", "solved"
    );
    for (id, recs) in &by_function {
        let mut errors: Vec<f64> = recs.iter().map(|r| r.final_error).collect();
        let mut clocks: Vec<f64> = recs.iter().map(|r| r.wall_clock_seconds).collect();
        let solved = recs.iter().filter(|r| r.solved).count();
        out.push_str(&format!(
            "{:>4}  {:>13.6e}  {:>12.3}  {:>6}/{:<2}\n",
            format!("F{id:02}"),
            median(&mut errors),
            median(&mut clocks),
            solved,
            trials
        ));
    }
    out
}
