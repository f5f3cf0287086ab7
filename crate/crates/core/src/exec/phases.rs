//! Shared per-generation building blocks.
//!
//! Every execution model decomposes a generation into the same four pieces:
//! trial-index selection, optional jDE parameter adaptation, trial vector
//! generation (mutation + crossover + bound repair), and replacement. All
//! randomness is drawn from streams addressed by `(seed, generation,
//! individual, phase)`, so the pieces can run in any order, on any thread,
//! in any model, and still reproduce the sequential trajectory exactly.

use super::{DeParams, IndexSelection, Problem};
use crate::de::{
    adapt_jde, crossover_binomial, mutate_rand_1, repair_bounds, select_indices_displacement,
    select_indices_rejection, select_replace, Individual, JdeParams, ParameterVector, Population,
};
use crate::error::Result;
use crate::rng::{RandomSource, RngStream};

/// Logical draw phases within one generation.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Phase {
    Init = 0,
    IndexSelect = 1,
    Adapt = 2,
    Crossover = 3,
}

/// The stream for one (generation, individual, phase) cell. Stream ids stay
/// collision-free for populations below 2^31 and generation counts below
/// 2^30, far beyond any reachable evaluation budget.
pub(crate) fn stream(seed: u64, generation: u32, individual: usize, phase: Phase) -> RngStream {
    let sid = (u64::from(generation) << 34) | ((individual as u64) << 3) | phase as u64;
    RngStream::new(seed, sid)
}

/// Uniform initial vector for one individual.
pub(crate) fn init_vector(seed: u64, individual: usize, dim: usize, lower: f64, upper: f64) -> ParameterVector {
    let mut rng = stream(seed, 0, individual, Phase::Init);
    ParameterVector((0..dim).map(|_| rng.next_range(lower, upper)).collect())
}

/// Builds the unevaluated initial population, carrying per-individual
/// control parameters when the run is self-adaptive.
pub(crate) fn init_members<F: Fn(&[f64]) -> f64 + Sync>(
    problem: &Problem<'_, F>,
    params: &DeParams,
    seed: u64,
) -> Vec<Individual> {
    let start = JdeParams {
        f: params.control.f,
        cr: params.control.cr,
    };
    (0..params.control.np)
        .map(|i| Individual {
            vector: init_vector(seed, i, problem.dim, problem.lower, problem.upper),
            fitness: None,
            params: params.jde.then_some(start),
        })
        .collect()
}

/// Trial-vector index selection for one individual. For island runs the
/// population is a sub-range; `local_target` and `local_np` address it while
/// `stream_individual` keeps the global stream identity.
pub(crate) fn select_indices(
    seed: u64,
    generation: u32,
    stream_individual: usize,
    local_target: usize,
    local_np: usize,
    selection: IndexSelection,
) -> Result<(usize, usize, usize)> {
    let mut rng = stream(seed, generation, stream_individual, Phase::IndexSelect);
    match selection {
        IndexSelection::Rejection => select_indices_rejection(local_target, local_np, &mut rng),
        IndexSelection::Displacement => {
            select_indices_displacement(local_target, local_np, &mut rng)
        }
    }
}

/// Control parameters used to build individual `i`'s trial this generation:
/// the adapted per-individual pair for jDE runs, the fixed pair otherwise.
pub(crate) fn trial_params(
    seed: u64,
    generation: u32,
    individual: usize,
    parent: &Individual,
    params: &DeParams,
) -> JdeParams {
    match (params.jde, parent.params) {
        (true, Some(current)) => {
            let mut rng = stream(seed, generation, individual, Phase::Adapt);
            adapt_jde(current, &mut rng)
        }
        _ => JdeParams {
            f: params.control.f,
            cr: params.control.cr,
        },
    }
}

/// Mutation, crossover, and bound repair for one individual. `indices` are
/// local to `pop`; `stream_individual` is the global stream identity.
#[allow(clippy::too_many_arguments)]
pub(crate) fn build_trial<F: Fn(&[f64]) -> f64 + Sync>(
    problem: &Problem<'_, F>,
    pop: &Population,
    seed: u64,
    generation: u32,
    stream_individual: usize,
    local_target: usize,
    indices: (usize, usize, usize),
    fcr: JdeParams,
) -> Result<ParameterVector> {
    let mutant = mutate_rand_1(pop, indices.0, indices.1, indices.2, fcr.f);
    let mut rng = stream(seed, generation, stream_individual, Phase::Crossover);
    let trial = crossover_binomial(&pop.members[local_target].vector, &mutant, fcr.cr, &mut rng)?;
    Ok(repair_bounds(trial, problem.lower, problem.upper))
}

/// Greedy replacement, attaching the trial's control parameters so they
/// persist exactly when the offspring survives.
pub(crate) fn replace(
    parent: &Individual,
    trial_vector: ParameterVector,
    trial_fitness: f64,
    fcr: JdeParams,
    jde: bool,
) -> Result<Individual> {
    let trial = Individual {
        vector: trial_vector,
        fitness: Some(trial_fitness),
        params: jde.then_some(fcr),
    };
    select_replace(parent.clone(), trial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_distinct_across_cells() {
        let mut seen = std::collections::HashSet::new();
        for gen in 0..4u32 {
            for ind in 0..8usize {
                for phase in [Phase::Init, Phase::IndexSelect, Phase::Adapt, Phase::Crossover] {
                    let mut s = stream(42, gen, ind, phase);
                    assert!(seen.insert(s.next_u64()), "stream collision at ({gen},{ind})");
                }
            }
        }
    }

    #[test]
    fn init_vector_respects_bounds_and_seed() {
        let a = init_vector(5, 3, 16, -100.0, 100.0);
        let b = init_vector(5, 3, 16, -100.0, 100.0);
        assert!(a.bits_eq(&b));
        assert!(a.as_slice().iter().all(|v| (-100.0..100.0).contains(v)));
        let c = init_vector(5, 4, 16, -100.0, 100.0);
        assert!(!a.bits_eq(&c));
    }
}
