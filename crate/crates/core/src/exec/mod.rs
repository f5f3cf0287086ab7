//! Execution models for the DE generational loop.
//!
//! Six models share one trajectory contract: for a fixed seed, sequential,
//! master-slave, batch-offload, phased, and fused runs produce bit-identical
//! populations at every generation (the island model runs a genuinely
//! different algorithm and is excluded). The models differ only in *where*
//! work happens:
//!
//! - [`run_sequential`] — the whole loop on one thread;
//! - [`run_master_slave`] — trial construction on the master, fitness
//!   evaluation fanned out to a worker pool, synchronous join per generation;
//! - [`run_batch_offload`] — trials serialized through an explicit byte
//!   boundary to a batch evaluator and results copied back, modeling an
//!   accelerator transfer without claiming its latency;
//! - [`run_phased`] — every DE operation as its own data-parallel pass with a
//!   full barrier between passes;
//! - [`run_fused`] — trial generation, evaluation, and replacement fused into
//!   a single pass per generation, with next-generation index selection
//!   overlapped alongside it;
//! - [`run_island`] — independent sub-populations with periodic best-to-worst
//!   migration around a ring.

mod batch;
mod fused;
mod island;
mod master_slave;
mod phased;
mod phases;
mod sequential;

pub use batch::{run_batch_offload, BatchEvaluator, InProcessEvaluator};
pub use fused::run_fused;
pub use island::run_island;
pub use master_slave::run_master_slave;
pub use phased::run_phased;
pub use sequential::run_sequential;

use std::time::{Duration, Instant};

use crate::bench::{check_termination, StoppingRule, Termination};
use crate::de::{ControlParams, Individual, Population, DISPLACEMENT_MIN_NP};
use crate::error::{Error, Result};

/// How trial-vector indices are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexSelection {
    /// Trial-and-error redraw of each index (the traditional method).
    #[default]
    Rejection,
    /// Three displacement values accumulated by partial sums modulo NP.
    Displacement,
}

/// Algorithm-level parameters shared by every execution model.
#[derive(Debug, Clone, Copy)]
pub struct DeParams {
    pub control: ControlParams,
    /// Self-adapt (F, CR) per individual; `control` supplies initial values.
    pub jde: bool,
    pub index_selection: IndexSelection,
}

impl DeParams {
    pub fn validate(&self) -> Result<()> {
        self.control.validate()?;
        if self.index_selection == IndexSelection::Displacement
            && self.control.np < DISPLACEMENT_MIN_NP
        {
            return Err(Error::config(format!(
                "displacement index selection needs NP >= {DISPLACEMENT_MIN_NP}, got {}",
                self.control.np
            )));
        }
        Ok(())
    }
}

/// Strategy descriptor selecting one of the six execution models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecutionModel {
    Sequential,
    MasterSlave {
        workers: usize,
    },
    BatchOffload,
    Phased {
        workers: usize,
    },
    Fused {
        workers: usize,
    },
    Island {
        islands: usize,
        migration_interval: u64,
        migrants: usize,
    },
}

impl ExecutionModel {
    pub fn validate(&self, np: usize) -> Result<()> {
        match *self {
            ExecutionModel::Sequential | ExecutionModel::BatchOffload => Ok(()),
            ExecutionModel::MasterSlave { workers }
            | ExecutionModel::Phased { workers }
            | ExecutionModel::Fused { workers } => {
                if workers == 0 {
                    Err(Error::config("worker count must be at least 1"))
                } else {
                    Ok(())
                }
            }
            ExecutionModel::Island {
                islands,
                migration_interval,
                migrants,
            } => {
                if islands < 2 {
                    return Err(Error::config("island model needs at least 2 islands"));
                }
                if migration_interval == 0 {
                    return Err(Error::config("migration interval must be at least 1"));
                }
                if !np.is_multiple_of(islands) {
                    return Err(Error::config(format!(
                        "population size {np} is not divisible into {islands} islands"
                    )));
                }
                let island_size = np / islands;
                if island_size < Population::MIN_SIZE {
                    return Err(Error::config(format!(
                        "island size {island_size} is below the minimum of {}",
                        Population::MIN_SIZE
                    )));
                }
                if migrants >= island_size {
                    return Err(Error::config(format!(
                        "{migrants} migrants cannot leave an island of {island_size}"
                    )));
                }
                Ok(())
            }
        }
    }

    #[must_use]
    pub fn label(&self) -> String {
        match *self {
            ExecutionModel::Sequential => "sequential".into(),
            ExecutionModel::MasterSlave { workers } => format!("master_slave({workers})"),
            ExecutionModel::BatchOffload => "batch_offload".into(),
            ExecutionModel::Phased { workers } => format!("phased({workers})"),
            ExecutionModel::Fused { workers } => format!("fused({workers})"),
            ExecutionModel::Island {
                islands,
                migration_interval,
                migrants,
            } => format!("island({islands}x, interval {migration_interval}, {migrants} migrants)"),
        }
    }
}

/// The optimization problem handed to a runner. The objective must be pure:
/// identical input bits produce identical output bits on every thread.
pub struct Problem<'a, F: Fn(&[f64]) -> f64 + Sync> {
    pub objective: &'a F,
    pub dim: usize,
    pub lower: f64,
    pub upper: f64,
}

impl<'a, F: Fn(&[f64]) -> f64 + Sync> Problem<'a, F> {
    pub fn new(objective: &'a F, dim: usize, bounds: (f64, f64)) -> Self {
        Problem {
            objective,
            dim,
            lower: bounds.0,
            upper: bounds.1,
        }
    }
}

/// Live run bookkeeping shared by all models.
#[derive(Debug, Clone)]
pub struct RunState {
    pub population: Population,
    pub fe_count: u64,
    pub best: Individual,
    pub wall_clock: Duration,
    /// Boundary crossings (batch-offload only): two per offloaded generation.
    pub transfer_count: u64,
    /// Data-parallel passes executed (phased: 4 per generation, fused: 1).
    pub barrier_passes: u64,
    pub solved: bool,
    pub solved_index: Option<usize>,
}

/// Final outcome of one optimization run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub best: Individual,
    /// Best objective value relative to the benchmark's optimum of 0.
    pub final_error: f64,
    pub fe_count: u64,
    pub generations: u32,
    pub wall_clock: Duration,
    pub transfer_count: u64,
    pub barrier_passes: u64,
    pub solved: bool,
    pub solved_index: Option<usize>,
    pub solved_generation: Option<u32>,
    pub population: Population,
}

/// Snapshot passed to the per-generation observer at each barrier
/// (generation 0 is the evaluated initial population).
pub struct GenerationEvent<'a> {
    pub generation: u32,
    pub fe_count: u64,
    pub elapsed: Duration,
    pub best_error: f64,
    pub population: &'a Population,
}

/// Per-generation callback; used for convergence traces and equivalence
/// checks. Runs inside the timed section, so benchmark runs pass `None`.
pub type Observer<'a> = dyn FnMut(&GenerationEvent<'_>) + 'a;

/// Runs `model` on `problem`. Batch offload uses the in-process evaluator;
/// call [`run_batch_offload`] directly to supply a custom one.
pub fn run<F: Fn(&[f64]) -> f64 + Sync>(
    model: &ExecutionModel,
    problem: &Problem<'_, F>,
    params: &DeParams,
    rule: &StoppingRule,
    seed: u64,
    observer: Option<&mut Observer<'_>>,
) -> Result<RunResult> {
    model.validate(params.control.np)?;
    match *model {
        ExecutionModel::Sequential => run_sequential(problem, params, rule, seed, observer),
        ExecutionModel::MasterSlave { workers } => {
            run_master_slave(problem, params, rule, seed, workers, observer)
        }
        ExecutionModel::BatchOffload => {
            let evaluator = InProcessEvaluator::new(problem.objective);
            run_batch_offload(problem, params, rule, seed, &evaluator, observer)
        }
        ExecutionModel::Phased { workers } => {
            run_phased(problem, params, rule, seed, workers, observer)
        }
        ExecutionModel::Fused { workers } => {
            run_fused(problem, params, rule, seed, workers, observer)
        }
        ExecutionModel::Island {
            islands,
            migration_interval,
            migrants,
        } => run_island(
            problem,
            params,
            rule,
            seed,
            islands,
            migration_interval,
            migrants,
            observer,
        ),
    }
}

/// What one model-specific generation step produced.
pub(crate) struct StepOutput {
    pub members: Vec<Individual>,
    pub transfers: u64,
    pub barriers: u64,
}

/// The generational loop shared by every model: initialization, solved and
/// budget checks at each generation barrier, FE accounting, observer
/// notifications, and wall-clock measurement around the loop only.
///
/// The budget check runs after each completed generation, so a run always
/// executes at least one generation unless the initial population already
/// contains a solution.
pub(crate) fn drive<F, I, S>(
    problem: &Problem<'_, F>,
    params: &DeParams,
    rule: &StoppingRule,
    seed: u64,
    mut init_eval: I,
    mut step: S,
    mut observer: Option<&mut Observer<'_>>,
) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
    I: FnMut(&mut Vec<Individual>) -> Result<(u64, u64)>,
    S: FnMut(&Population, u32) -> Result<StepOutput>,
{
    params.validate()?;
    if problem.lower >= problem.upper {
        return Err(Error::config(format!(
            "invalid bounds [{}, {}]",
            problem.lower, problem.upper
        )));
    }
    let np = params.control.np;
    let start = Instant::now();

    let mut members = phases::init_members(problem, params, seed);
    let (init_transfers, init_barriers) = init_eval(&mut members)?;
    debug_assert!(members.iter().all(|m| m.fitness.is_some()));

    let population = Population::new(members)?;
    let (best_idx, best_fit) = population.best()?;
    let mut state = RunState {
        best: population.members[best_idx].clone(),
        population,
        fe_count: np as u64,
        wall_clock: Duration::ZERO,
        transfer_count: init_transfers,
        barrier_passes: init_barriers,
        solved: best_fit <= rule.target_error,
        solved_index: None,
    };
    let mut best_idx = best_idx;
    let mut best_fit = best_fit;
    let mut solved_generation = None;

    notify(&mut observer, &state, start, best_fit);

    if state.solved {
        state.solved_index = Some(best_idx);
        solved_generation = Some(0);
    } else {
        loop {
            let gen = state.population.generation + 1;
            let out = step(&state.population, gen)?;
            debug_assert_eq!(out.members.len(), np);
            state.population = Population {
                members: out.members,
                generation: gen,
            };
            state.fe_count += np as u64;
            state.transfer_count += out.transfers;
            state.barrier_passes += out.barriers;

            let (bi, bf) = state.population.best()?;
            if bf <= best_fit {
                best_idx = bi;
                best_fit = bf;
                state.best = state.population.members[bi].clone();
            }
            notify(&mut observer, &state, start, best_fit);

            match check_termination(best_fit, state.fe_count, rule) {
                Termination::Solved => {
                    state.solved = true;
                    state.solved_index = Some(best_idx);
                    solved_generation = Some(gen);
                    break;
                }
                Termination::BudgetExhausted => break,
                Termination::Continue => {}
            }
        }
    }

    state.wall_clock = start.elapsed();
    Ok(RunResult {
        final_error: best_fit,
        best: state.best,
        fe_count: state.fe_count,
        generations: state.population.generation,
        wall_clock: state.wall_clock,
        transfer_count: state.transfer_count,
        barrier_passes: state.barrier_passes,
        solved: state.solved,
        solved_index: state.solved_index,
        solved_generation,
        population: state.population,
    })
}

fn notify(observer: &mut Option<&mut Observer<'_>>, state: &RunState, start: Instant, best_error: f64) {
    if let Some(obs) = observer.as_mut() {
        obs(&GenerationEvent {
            generation: state.population.generation,
            fe_count: state.fe_count,
            elapsed: start.elapsed(),
            best_error,
            population: &state.population,
        });
    }
}

/// Builds a rayon pool with exactly `workers` threads.
pub(crate) fn worker_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::runtime(format!("cannot build worker pool: {e}")))
}
