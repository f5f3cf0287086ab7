//! Batch offload across an explicit transfer boundary.
//!
//! The model mirrors the naive accelerator pattern: each generation the
//! whole trial population is serialized into a byte buffer, handed across a
//! boundary to a batch evaluator, and the fitness values are copied back.
//! The boundary is structural — it counts crossings and pays the copy, but
//! makes no claim about bus latency. Initial-population evaluation happens
//! on the host side, so `transfer_count` is exactly two per generation.

use super::phases;
use super::{drive, DeParams, Observer, Problem, RunResult, StepOutput};
use crate::bench::StoppingRule;
use crate::de::{JdeParams, ParameterVector};
use crate::error::{Error, Result};

/// The far side of the transfer boundary: receives a row-major buffer of
/// `NP * dim` little-endian f64 values and returns `NP` fitness values in
/// population order, also as little-endian f64 bytes.
pub trait BatchEvaluator: Sync {
    fn evaluate_batch(&self, dim: usize, population: &[u8]) -> Result<Vec<u8>>;
}

/// Default boundary target that evaluates the batch in-process.
pub struct InProcessEvaluator<'a, F: Fn(&[f64]) -> f64 + Sync> {
    objective: &'a F,
}

impl<'a, F: Fn(&[f64]) -> f64 + Sync> InProcessEvaluator<'a, F> {
    pub fn new(objective: &'a F) -> Self {
        InProcessEvaluator { objective }
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> BatchEvaluator for InProcessEvaluator<'_, F> {
    fn evaluate_batch(&self, dim: usize, population: &[u8]) -> Result<Vec<u8>> {
        let values = bytes_to_f64s(population)?;
        if dim == 0 || values.len() % dim != 0 {
            return Err(Error::runtime(format!(
                "batch of {} values does not divide into rows of {dim}",
                values.len()
            )));
        }
        let fits: Vec<f64> = values
            .chunks_exact(dim)
            .map(|row| (self.objective)(row))
            .collect();
        Ok(f64s_to_bytes(&fits))
    }
}

pub(crate) fn f64s_to_bytes(values: &[f64]) -> Vec<u8> {
    let mut buf = Vec::with_capacity(values.len() * 8);
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    buf
}

pub(crate) fn bytes_to_f64s(bytes: &[u8]) -> Result<Vec<f64>> {
    if !bytes.len().is_multiple_of(8) {
        return Err(Error::runtime(format!(
            "byte buffer length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

pub fn run_batch_offload<F: Fn(&[f64]) -> f64 + Sync, E: BatchEvaluator>(
    problem: &Problem<'_, F>,
    params: &DeParams,
    rule: &StoppingRule,
    seed: u64,
    evaluator: &E,
    observer: Option<&mut Observer<'_>>,
) -> Result<RunResult> {
    let np = params.control.np;
    let dim = problem.dim;
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
            let mut trials: Vec<(ParameterVector, JdeParams)> = Vec::with_capacity(np);
            let mut outbound = Vec::with_capacity(np * dim * 8);
            for i in 0..np {
                let indices = phases::select_indices(seed, gen, i, i, np, params.index_selection)?;
                let fcr = phases::trial_params(seed, gen, i, &prev.members[i], params);
                let trial = phases::build_trial(problem, prev, seed, gen, i, i, indices, fcr)?;
                outbound.extend_from_slice(&f64s_to_bytes(trial.as_slice()));
                trials.push((trial, fcr));
            }
            // Crossing 1: population out. Crossing 2: fitness values back.
            let inbound = evaluator.evaluate_batch(dim, &outbound)?;
            let fits = bytes_to_f64s(&inbound)?;
            if fits.len() != np {
                return Err(Error::runtime(format!(
                    "batch evaluator returned {} fitness values for {np} trials",
                    fits.len()
                )));
            }
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
                transfers: 2,
                barriers: 0,
            })
        },
        observer,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_round_trip_is_exact() {
        let values = [0.0, -1.5, f64::MIN_POSITIVE, 1e300, -0.0];
        let bytes = f64s_to_bytes(&values);
        let back = bytes_to_f64s(&bytes).unwrap();
        for (a, b) in values.iter().zip(&back) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert!(bytes_to_f64s(&bytes[..7]).is_err());
    }

    #[test]
    fn wrong_count_from_evaluator_is_runtime_error() {
        struct Short;
        impl BatchEvaluator for Short {
            fn evaluate_batch(&self, _dim: usize, _population: &[u8]) -> Result<Vec<u8>> {
                Ok(f64s_to_bytes(&[1.0]))
            }
        }
        let objective = |x: &[f64]| x.iter().map(|v| v * v).sum();
        let problem = Problem::new(&objective, 3, (-10.0, 10.0));
        let params = DeParams {
            control: crate::de::ControlParams { f: 0.5, cr: 0.3, np: 8 },
            jde: false,
            index_selection: Default::default(),
        };
        let rule = StoppingRule {
            max_fes: 1_000,
            target_error: 1e-8,
        };
        let err = run_batch_offload(&problem, &params, &rule, 1, &Short, None).unwrap_err();
        assert!(matches!(err, Error::Runtime(_)));
    }
}
