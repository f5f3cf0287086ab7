//! Synchronous master-slave: the master runs the DE operators, a worker pool
//! evaluates fitness, and the master waits for every evaluation before
//! moving to the next generation. Only evaluation is distributed, so the
//! trajectory matches the sequential model draw for draw.

use rayon::prelude::*;

use super::phases;
use super::{drive, worker_pool, DeParams, Observer, Problem, RunResult, StepOutput};
use crate::bench::StoppingRule;
use crate::de::ParameterVector;
use crate::error::Result;

pub fn run_master_slave<F: Fn(&[f64]) -> f64 + Sync>(
    problem: &Problem<'_, F>,
    params: &DeParams,
    rule: &StoppingRule,
    seed: u64,
    workers: usize,
    observer: Option<&mut Observer<'_>>,
) -> Result<RunResult> {
    let np = params.control.np;
    let pool = worker_pool(workers)?;
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
            // Master: all operator work stays on this thread.
            let mut trials: Vec<(ParameterVector, crate::de::JdeParams)> =
                Vec::with_capacity(np);
            for i in 0..np {
                let indices = phases::select_indices(seed, gen, i, i, np, params.index_selection)?;
                let fcr = phases::trial_params(seed, gen, i, &prev.members[i], params);
                let trial = phases::build_trial(problem, prev, seed, gen, i, i, indices, fcr)?;
                trials.push((trial, fcr));
            }
            // Slaves: evaluate the whole trial population, then join.
            let fits: Vec<f64> = pool.install(|| {
                trials
                    .par_iter()
                    .map(|(t, _)| (problem.objective)(t.as_slice()))
                    .collect()
            });
            let mut members = Vec::with_capacity(np);
            for (i, ((trial, fcr), fitness)) in trials.into_iter().zip(fits).enumerate() {
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
                barriers: 1,
            })
        },
        observer,
    )
}
