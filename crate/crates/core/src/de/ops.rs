//! The DE operators: index selection, mutation, crossover, replacement,
//! bound repair, and jDE parameter adaptation.

use super::{Individual, JdeParams, ParameterVector, Population};
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// jDE: probability of resampling F for an individual's offspring.
pub const JDE_F_PROB: f64 = 0.1;
/// jDE: probability of resampling CR.
pub const JDE_CR_PROB: f64 = 0.1;
/// jDE: lower end of the F sampling range.
pub const JDE_F_LOWER: f64 = 0.1;
/// jDE: width of the F sampling range (F is drawn from [0.1, 1.0]).
pub const JDE_F_RANGE: f64 = 0.9;

/// Smallest population for which the displacement method can resolve
/// wraparound collisions (floor(NP/3) >= 2 with room to redraw).
pub const DISPLACEMENT_MIN_NP: usize = 7;

/// Draws three pairwise-distinct indices, all different from `target`, by
/// redrawing on collision. Each admissible ordered tuple is equally likely.
pub fn select_indices_rejection(
    target: usize,
    np: usize,
    rng: &mut impl RandomSource,
) -> Result<(usize, usize, usize)> {
    if np < Population::MIN_SIZE {
        return Err(Error::config(format!(
            "index selection needs NP >= {}, got {np}",
            Population::MIN_SIZE
        )));
    }
    debug_assert!(target < np);
    let r1 = loop {
        let r = rng.next_index(np);
        if r != target {
            break r;
        }
    };
    let r2 = loop {
        let r = rng.next_index(np);
        if r != target && r != r1 {
            break r;
        }
    };
    let r3 = loop {
        let r = rng.next_index(np);
        if r != target && r != r1 && r != r2 {
            break r;
        }
    };
    Ok((r1, r2, r3))
}

/// Applies one displacement draw: partial sums of (d1, d2, d3) modulo NP.
///
/// Returns `None` when any resulting index equals `target` or duplicates
/// another. Within the documented displacement ranges only target collisions
/// can actually occur (d1 keeps `r1` off the target, and step sizes of at
/// most floor(NP/3) cannot wrap a partial sum onto an earlier index), but
/// the whole-tuple check keeps this safe for any input.
#[must_use]
pub fn displacement_tuple(
    target: usize,
    np: usize,
    d1: usize,
    d2: usize,
    d3: usize,
) -> Option<(usize, usize, usize)> {
    let r1 = (target + d1) % np;
    let r2 = (r1 + d2) % np;
    let r3 = (r2 + d3) % np;
    let collision = r1 == target
        || r2 == target
        || r3 == target
        || r1 == r2
        || r2 == r3
        || r1 == r3;
    if collision {
        return None;
    }
    Some((r1, r2, r3))
}

/// Draws three mutually exclusive indices from three displacement values:
/// `d1` in `[1, NP-1]`, `d2` and `d3` in `[1, floor(NP/3)]`, accumulated as
/// partial sums modulo NP. A draw whose partial sums collide with `target`
/// is rejected wholesale and repeated, so the common case costs exactly
/// three random numbers.
pub fn select_indices_displacement(
    target: usize,
    np: usize,
    rng: &mut impl RandomSource,
) -> Result<(usize, usize, usize)> {
    if np < DISPLACEMENT_MIN_NP {
        return Err(Error::config(format!(
            "displacement selection needs NP >= {DISPLACEMENT_MIN_NP}, got {np}; \
             use rejection selection for smaller populations"
        )));
    }
    debug_assert!(target < np);
    let third = np / 3;
    loop {
        let d1 = 1 + rng.next_index(np - 1);
        let d2 = 1 + rng.next_index(third);
        let d3 = 1 + rng.next_index(third);
        if let Some(tuple) = displacement_tuple(target, np, d1, d2, d3) {
            return Ok(tuple);
        }
    }
}

/// rand/1 mutation: `y = x_r1 + F * (x_r2 - x_r3)`, elementwise. Bounds are
/// not enforced here; see [`repair_bounds`].
pub fn mutate_rand_1(
    pop: &Population,
    r1: usize,
    r2: usize,
    r3: usize,
    f: f64,
) -> ParameterVector {
    debug_assert!(r1 != r2 && r2 != r3 && r1 != r3);
    let a = pop.members[r1].vector.as_slice();
    let b = pop.members[r2].vector.as_slice();
    let c = pop.members[r3].vector.as_slice();
    ParameterVector(
        a.iter()
            .zip(b.iter().zip(c))
            .map(|(&a, (&b, &c))| a + f * (b - c))
            .collect(),
    )
}

/// Binomial crossover: position `j` takes the mutant value iff
/// `rand_j <= CR` or `j == j_rand`, otherwise the target value. One uniform
/// draw for `j_rand` is followed by one per position (including `j_rand`).
pub fn crossover_binomial(
    target: &ParameterVector,
    mutant: &ParameterVector,
    cr: f64,
    rng: &mut impl RandomSource,
) -> Result<ParameterVector> {
    if target.len() != mutant.len() {
        return Err(Error::usage(format!(
            "crossover dimension mismatch: target {} vs mutant {}",
            target.len(),
            mutant.len()
        )));
    }
    let j_rand = rng.next_index(target.len());
    let trial = target
        .as_slice()
        .iter()
        .zip(mutant.as_slice())
        .enumerate()
        .map(|(j, (&t, &m))| {
            if rng.next_f64() <= cr || j == j_rand {
                m
            } else {
                t
            }
        })
        .collect();
    Ok(ParameterVector(trial))
}

/// Crossover with a scripted `j_rand` and per-position uniforms. The random
/// variant delegates the decision rule here, so hand-worked examples can pin
/// the exact branch behavior.
pub fn crossover_binomial_scripted(
    target: &ParameterVector,
    mutant: &ParameterVector,
    cr: f64,
    j_rand: usize,
    draws: &[f64],
) -> ParameterVector {
    debug_assert_eq!(target.len(), mutant.len());
    debug_assert_eq!(target.len(), draws.len());
    ParameterVector(
        target
            .as_slice()
            .iter()
            .zip(mutant.as_slice())
            .enumerate()
            .map(|(j, (&t, &m))| if draws[j] <= cr || j == j_rand { m } else { t })
            .collect(),
    )
}

/// Greedy replacement for minimization: the trial survives iff its objective
/// value is no worse than the target's. Ties go to the trial, which helps
/// traversal of flat regions.
pub fn select_replace(target: Individual, trial: Individual) -> Result<Individual> {
    let ft = trial.fitness()?;
    let fx = target.fitness()?;
    Ok(if ft <= fx { trial } else { target })
}

/// Clamps every out-of-range component to the violated bound.
#[must_use]
pub fn repair_bounds(mut v: ParameterVector, lower: f64, upper: f64) -> ParameterVector {
    debug_assert!(lower < upper);
    for x in &mut v.0 {
        *x = x.clamp(lower, upper);
    }
    v
}

/// jDE adaptation: with probability [`JDE_F_PROB`] draw a fresh F from
/// `[JDE_F_LOWER, JDE_F_LOWER + JDE_F_RANGE]`, and with probability
/// [`JDE_CR_PROB`] a fresh CR from `[0, 1]`; otherwise inherit. The adapted
/// pair is used to build the offspring and persists only if that offspring
/// replaces its parent.
pub fn adapt_jde(params: JdeParams, rng: &mut impl RandomSource) -> JdeParams {
    let f = if rng.next_f64() < JDE_F_PROB {
        JDE_F_LOWER + rng.next_f64() * JDE_F_RANGE
    } else {
        params.f
    };
    let cr = if rng.next_f64() < JDE_CR_PROB {
        rng.next_f64()
    } else {
        params.cr
    };
    JdeParams { f, cr }
}
