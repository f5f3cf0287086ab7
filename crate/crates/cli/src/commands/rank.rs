//! `devolve rank` — score stored trial records.

use std::collections::BTreeMap;

use crate::args::RankArgs;
use devolve::bench::{aggregate_report, rank_function, ResultsFile, TrialRecord};
use devolve::error::Result;

pub fn execute(args: RankArgs) -> Result<()> {
    let mut records: Vec<TrialRecord> = Vec::new();
    for path in &args.files {
        records.extend(ResultsFile::new(path).load()?);
    }

    // One ranking group per (function, dimension), in function order.
    let mut groups: BTreeMap<(u8, usize), Vec<TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.function_id, r.dimension)).or_default().push(r);
    }
    let per_function = groups
        .values()
        .map(|trials| rank_function(trials))
        .collect::<Result<Vec<_>>>()?;
    let report = aggregate_report(&per_function)?;

    print!("{}", report.render_table());
    println!(
        "({} algorithm(s), {} function(s), n={} trials each)",
        report.algorithms.len(),
        report.functions.len(),
        report.n_trials
    );

    if let Some(prefix) = &args.out {
        let ranks_path = prefix.with_extension("ranks.csv");
        let scores_path = prefix.with_extension("scores.csv");
        std::fs::write(&ranks_path, report.ranks_csv())?;
        std::fs::write(&scores_path, report.scores_csv())?;
        println!(
            "wrote {} and {}",
            ranks_path.display(),
            scores_path.display()
        );
    }
    Ok(())
}
