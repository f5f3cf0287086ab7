//! Phased data-parallel model: each DE operation is a separate pass over the
//! whole population with a full barrier between passes, the way a
//! kernel-per-operation implementation synchronizes. One generation runs
//! exactly four barriered passes: index selection (with parameter
//! adaptation), trial generation, evaluation, replacement.

use rayon::prelude::*;

use super::phases;
use super::{drive, worker_pool, DeParams, Observer, Problem, RunResult, StepOutput};
use crate::bench::StoppingRule;
use crate::de::{Individual, JdeParams, ParameterVector};
use crate::error::Result;

/// Trial indices plus the control parameters selected for one individual.
type TrialPlan = ((usize, usize, usize), JdeParams);

pub fn run_phased<F: Fn(&[f64]) -> f64 + Sync>(
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
            // One pool entry per generation; each collect below is a full
            // barrier over the population, giving the four-pass structure.
            // Passes collect Vec<Result<_>> (the in-place indexed path) and
            // unwrap serially; Result-collecting a parallel iterator would
            // fall back to fold-and-concatenate.
            let members: Vec<Individual> = pool.install(|| -> Result<Vec<Individual>> {
                // Pass 1: trial-index selection (+ jDE adaptation). Barrier.
                let plans: Vec<Result<TrialPlan>> = (0..np)
                    .into_par_iter()
                    .map(|i| {
                        let indices = phases::select_indices(
                            seed,
                            gen,
                            i,
                            i,
                            np,
                            params.index_selection,
                        )?;
                        let fcr = phases::trial_params(seed, gen, i, &prev.members[i], params);
                        Ok((indices, fcr))
                    })
                    .collect();
                let plans: Vec<TrialPlan> = plans.into_iter().collect::<Result<_>>()?;

                // Pass 2: trial-vector generation. Barrier.
                let trials: Vec<Result<ParameterVector>> = (0..np)
                    .into_par_iter()
                    .map(|i| {
                        let (indices, fcr) = plans[i];
                        phases::build_trial(problem, prev, seed, gen, i, i, indices, fcr)
                    })
                    .collect();
                let trials: Vec<ParameterVector> = trials.into_iter().collect::<Result<_>>()?;

                // Pass 3: evaluation. Barrier.
                let fits: Vec<f64> = trials
                    .par_iter()
                    .map(|t| (problem.objective)(t.as_slice()))
                    .collect();

                // Pass 4: replacement. Barrier.
                let members: Vec<Result<Individual>> = trials
                    .into_par_iter()
                    .zip(fits)
                    .enumerate()
                    .map(|(i, (trial, fitness))| {
                        phases::replace(&prev.members[i], trial, fitness, plans[i].1, params.jde)
                    })
                    .collect();
                members.into_iter().collect()
            })?;

            Ok(StepOutput {
                members,
                transfers: 0,
                barriers: 4,
            })
        },
        observer,
    )
}
