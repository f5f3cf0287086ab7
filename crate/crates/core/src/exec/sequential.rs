//! The baseline single-threaded generational loop.

use super::phases;
use super::{drive, DeParams, Observer, Problem, RunResult, StepOutput};
use crate::bench::StoppingRule;
use crate::error::Result;

/// Canonical single-threaded DE: for each target in turn, select indices,
/// mutate, cross over, repair bounds, evaluate, and replace greedily.
pub fn run_sequential<F: Fn(&[f64]) -> f64 + Sync>(
    problem: &Problem<'_, F>,
    params: &DeParams,
    rule: &StoppingRule,
    seed: u64,
    observer: Option<&mut Observer<'_>>,
) -> Result<RunResult> {
    let np = params.control.np;
    drive(
        problem,
        params,
        rule,
        seed,
        |members| {
            for m in members.iter_mut() {
                m.fitness = Some((problem.objective)(m.vector.as_slice()));
            }
            Ok((0, 0))
        },
        |prev, gen| {
            let mut members = Vec::with_capacity(np);
            for i in 0..np {
                let indices = phases::select_indices(seed, gen, i, i, np, params.index_selection)?;
                let fcr = phases::trial_params(seed, gen, i, &prev.members[i], params);
                let trial = phases::build_trial(problem, prev, seed, gen, i, i, indices, fcr)?;
                let fitness = (problem.objective)(trial.as_slice());
                members.push(phases::replace(
                    &prev.members[i],
                    trial,
                    fitness,
                    fcr,
                    params.jde,
                )?);
            }
            Ok(StepOutput {
                members,
                transfers: 0,
                barriers: 0,
            })
        },
        observer,
    )
}
