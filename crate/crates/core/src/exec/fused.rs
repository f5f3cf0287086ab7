//! Fused model: trial generation, evaluation, and replacement consolidated
//! into one data-parallel pass per individual, so a generation costs a
//! single barrier and one sweep over population memory. Index selection for
//! the next generation runs concurrently with the fused pass, overlapping
//! the cheap bookkeeping with the expensive evaluation work.

use rayon::prelude::*;

use super::phases;
use super::{drive, worker_pool, DeParams, Observer, Problem, RunResult, StepOutput};
use crate::bench::StoppingRule;
use crate::de::Individual;
use crate::error::Result;

pub fn run_fused<F: Fn(&[f64]) -> f64 + Sync>(
    problem: &Problem<'_, F>,
    params: &DeParams,
    rule: &StoppingRule,
    seed: u64,
    workers: usize,
    observer: Option<&mut Observer<'_>>,
) -> Result<RunResult> {
    let np = params.control.np;
    let pool = worker_pool(workers)?;

    let select_all = |gen: u32| -> Result<Vec<(usize, usize, usize)>> {
        (0..np)
            .map(|i| phases::select_indices(seed, gen, i, i, np, params.index_selection))
            .collect()
    };

    // Indices for the first generation are prepared before the loop; inside
    // the loop each pass prepares the following generation's indices.
    let mut next_indices: Option<Vec<(usize, usize, usize)>> = None;

    drive(
        problem,
        params,
        rule,
        seed,
        |members| {
            let fits: Vec<f64> = pool.install(|| {
                members
                    .par_iter()
                    .map(|m| (problem.objective)(m.vector.as_slice()))
                    .collect()
            });
            for (m, f) in members.iter_mut().zip(fits) {
                m.fitness = Some(f);
            }
            Ok((0, 1))
        },
        |prev, gen| {
            let indices = match next_indices.take() {
                Some(idx) => idx,
                None => select_all(gen)?,
            };

            // One fused pass per generation; the index task for gen+1 runs
            // alongside it on the same pool.
            let (step, upcoming) = pool.install(|| {
                rayon::join(
                    || -> Vec<Result<Individual>> {
                        (0..np)
                            .into_par_iter()
                            .map(|i| {
                                let fcr =
                                    phases::trial_params(seed, gen, i, &prev.members[i], params);
                                let trial = phases::build_trial(
                                    problem, prev, seed, gen, i, i, indices[i], fcr,
                                )?;
                                let fitness = (problem.objective)(trial.as_slice());
                                phases::replace(&prev.members[i], trial, fitness, fcr, params.jde)
                            })
                            .collect()
                    },
                    || select_all(gen + 1),
                )
            });
            next_indices = Some(upcoming?);

            Ok(StepOutput {
                members: step.into_iter().collect::<Result<_>>()?,
                transfers: 0,
                barriers: 1,
            })
        },
        observer,
    )
}
