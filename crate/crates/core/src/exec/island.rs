//! Island model: the population splits into equal sub-populations that
//! evolve independently; every `migration_interval` generations each
//! island's best individuals replace its ring successor's worst, copied
//! synchronously from the pre-migration state at a global barrier.

use rayon::prelude::*;

use super::phases;
use super::{drive, DeParams, Observer, Problem, RunResult, StepOutput};
use crate::bench::StoppingRule;
use crate::de::Individual;
use crate::error::Result;

#[allow(clippy::too_many_arguments)]
pub fn run_island<F: Fn(&[f64]) -> f64 + Sync>(
    problem: &Problem<'_, F>,
    params: &DeParams,
    rule: &StoppingRule,
    seed: u64,
    islands: usize,
    migration_interval: u64,
    migrants: usize,
    observer: Option<&mut Observer<'_>>,
) -> Result<RunResult> {
    super::ExecutionModel::Island {
        islands,
        migration_interval,
        migrants,
    }
    .validate(params.control.np)?;
    let np = params.control.np;
    let island_size = np / islands;

    drive(
        problem,
        params,
        rule,
        seed,
        |members| {
            let fits: Vec<f64> = members
                .par_iter()
                .map(|m| (problem.objective)(m.vector.as_slice()))
                .collect();
            for (m, f) in members.iter_mut().zip(fits) {
                m.fitness = Some(f);
            }
            Ok((0, 0))
        },
        |prev, gen| {
            // Each island advances one generation independently; islands run
            // concurrently and a global barrier separates generations.
            let evolved: Vec<Vec<Individual>> = (0..islands)
                .into_par_iter()
                .map(|k| -> Result<Vec<Individual>> {
                    let base = k * island_size;
                    let mut island_members = Vec::with_capacity(island_size);
                    for local in 0..island_size {
                        let global = base + local;
                        // Streams are addressed by the global index; mates
                        // are drawn from within the island.
                        let local_indices = phases::select_indices(
                            seed,
                            gen,
                            global,
                            local,
                            island_size,
                            params.index_selection,
                        )?;
                        let indices = (
                            base + local_indices.0,
                            base + local_indices.1,
                            base + local_indices.2,
                        );
                        let fcr =
                            phases::trial_params(seed, gen, global, &prev.members[global], params);
                        let trial = phases::build_trial(
                            problem, prev, seed, gen, global, global, indices, fcr,
                        )?;
                        let fitness = (problem.objective)(trial.as_slice());
                        island_members.push(phases::replace(
                            &prev.members[global],
                            trial,
                            fitness,
                            fcr,
                            params.jde,
                        )?);
                    }
                    Ok(island_members)
                })
                .collect::<Result<_>>()?;
            let mut members: Vec<Individual> = evolved.into_iter().flatten().collect();

            if (gen as u64).is_multiple_of(migration_interval) && migrants > 0 {
                migrate_ring(&mut members, islands, island_size, migrants)?;
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

/// Copies each island's `migrants` best members over its ring successor's
/// worst, all selections taken from the pre-migration snapshot. Ties break
/// on the lower index so migration stays deterministic.
fn migrate_ring(
    members: &mut [Individual],
    islands: usize,
    island_size: usize,
    migrants: usize,
) -> Result<()> {
    let snapshot = members.to_vec();
    let order_of = |island: usize| -> Result<Vec<usize>> {
        let base = island * island_size;
        let mut order: Vec<usize> = (base..base + island_size).collect();
        // total order: fitness ascending, then index
        let mut keyed: Vec<(f64, usize)> = Vec::with_capacity(island_size);
        for &i in &order {
            keyed.push((snapshot[i].fitness()?, i));
        }
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        order.clear();
        order.extend(keyed.into_iter().map(|(_, i)| i));
        Ok(order)
    };

    for source in 0..islands {
        let dest = (source + 1) % islands;
        let best = order_of(source)?;
        let dest_order = order_of(dest)?;
        for m in 0..migrants {
            let incoming = best[m];
            let victim = dest_order[island_size - 1 - m];
            members[victim] = snapshot[incoming].clone();
        }
    }
    Ok(())
}
