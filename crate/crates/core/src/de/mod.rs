//! Domain types and the differential-evolution operators.
//!
//! The operators implement the rand/1/bin strategy: three mutually exclusive
//! random indices feed a difference-vector mutation, binomial crossover mixes
//! mutant and target, and greedy one-to-one replacement keeps the better of
//! the two. Optional per-individual (F, CR) adaptation follows the jDE rule.

mod ops;

pub use ops::{
    adapt_jde, crossover_binomial, crossover_binomial_scripted, displacement_tuple,
    mutate_rand_1, repair_bounds, select_indices_displacement, select_indices_rejection,
    select_replace, DISPLACEMENT_MIN_NP, JDE_CR_PROB, JDE_F_LOWER, JDE_F_PROB, JDE_F_RANGE,
};

use crate::error::{Error, Result};

/// A point in the D-dimensional search box.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector(pub Vec<f64>);

impl ParameterVector {
    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// True when both vectors contain bit-identical values.
    #[must_use]
    pub fn bits_eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl From<Vec<f64>> for ParameterVector {
    fn from(values: Vec<f64>) -> Self {
        ParameterVector(values)
    }
}

impl std::ops::Index<usize> for ParameterVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Per-individual control parameters carried by jDE runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JdeParams {
    pub f: f64,
    pub cr: f64,
}

/// A candidate solution plus its objective value.
///
/// `fitness` is `None` until the vector has been evaluated; operators that
/// require an evaluated individual return a usage error otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub vector: ParameterVector,
    pub fitness: Option<f64>,
    pub params: Option<JdeParams>,
}

impl Individual {
    #[must_use]
    pub fn unevaluated(vector: ParameterVector) -> Self {
        Individual {
            vector,
            fitness: None,
            params: None,
        }
    }

    /// Objective value, or a usage error if the individual was never evaluated.
    pub fn fitness(&self) -> Result<f64> {
        self.fitness
            .ok_or_else(|| Error::usage("individual has not been evaluated"))
    }
}

/// The NP individuals of one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: u32,
}

impl Population {
    // rand/1 mutation needs the target plus three mutually exclusive others.
    pub const MIN_SIZE: usize = 4;

    pub fn new(members: Vec<Individual>) -> Result<Self> {
        if members.len() < Self::MIN_SIZE {
            return Err(Error::config(format!(
                "population size {} is below the minimum of {}",
                members.len(),
                Self::MIN_SIZE
            )));
        }
        let dim = members[0].vector.len();
        if members.iter().any(|m| m.vector.len() != dim) {
            return Err(Error::config(
                "population members must share one dimension",
            ));
        }
        Ok(Population {
            members,
            generation: 0,
        })
    }

    #[must_use]
    pub fn size(&self) -> usize {
        self.members.len()
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.members.first().map_or(0, |m| m.vector.len())
    }

    /// Index and fitness of the best (lowest-objective) member.
    pub fn best(&self) -> Result<(usize, f64)> {
        let mut best = (0, self.members[0].fitness()?);
        for (i, m) in self.members.iter().enumerate().skip(1) {
            let f = m.fitness()?;
            if f < best.1 {
                best = (i, f);
            }
        }
        Ok(best)
    }

    /// True when both populations hold bit-identical vectors and fitnesses.
    #[must_use]
    pub fn bits_eq(&self, other: &Self) -> bool {
        self.members.len() == other.members.len()
            && self.members.iter().zip(&other.members).all(|(a, b)| {
                a.vector.bits_eq(&b.vector)
                    && a.fitness.map(f64::to_bits) == b.fitness.map(f64::to_bits)
            })
    }
}

/// Run-level control parameters for fixed-parameter DE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlParams {
    /// Differential weight, in (0, 2].
    pub f: f64,
    /// Crossover rate, in [0, 1].
    pub cr: f64,
    /// Population size, at least 4.
    pub np: usize,
}

impl ControlParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.f > 0.0 && self.f <= 2.0) {
            return Err(Error::config(format!(
                "differential weight F must lie in (0, 2], got {}",
                self.f
            )));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(Error::config(format!(
                "crossover rate CR must lie in [0, 1], got {}",
                self.cr
            )));
        }
        if self.np < Population::MIN_SIZE {
            return Err(Error::config(format!(
                "population size NP must be at least {}, got {}",
                Population::MIN_SIZE,
                self.np
            )));
        }
        Ok(())
    }
}
