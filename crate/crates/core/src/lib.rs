//! Differential evolution with deterministic parallel execution models and a
//! benchmark harness for comparing them.
//!
//! The crate is organized in four layers:
//!
//! - [`de`] — domain types (parameter vectors, individuals, populations) and
//!   the DE operators: index selection, rand/1 mutation, binomial crossover,
//!   greedy replacement, bound repair, and per-individual jDE adaptation.
//! - [`functions`] — a ten-function numerical-optimization benchmark built
//!   from fourteen basic kernels with shift/rotate/shuffle transforms, hybrid
//!   splitting, and distance-weighted composition.
//! - [`exec`] — six execution models (sequential, master-slave, batch-offload
//!   across an explicit transfer boundary, phased data-parallel passes, a
//!   fused single-pass variant, and a ring-migration island model) that share
//!   one deterministic trajectory contract: the same seed produces the same
//!   populations regardless of model or worker count.
//! - [`bench`] — trial orchestration, stopping rules, persistent trial
//!   records, and rank-sum scoring across algorithms.
//!
//! Determinism rests on [`rng::RngStream`], a counter-based generator that
//! assigns one logical stream per individual per phase, so parallel schedules
//! cannot reorder draws.

pub mod bench;
pub mod de;
pub mod error;
pub mod exec;
pub mod functions;
pub mod rng;

pub use error::{Error, Result};
