//! The ten-function numerical-optimization benchmark.
//!
//! One unimodal function, three basic functions, three hybrids, and three
//! compositions, all built from the kernels in [`kernels`]. The search range
//! is [-100, 100] in every dimension; each function relocates its optimum
//! with a shift vector, couples variables with an orthogonal rotation, and
//! (for hybrids) shuffles coordinates before splitting them across kernels.
//! The global minimum value of every function is 0, reached at the first
//! shift vector.

pub mod data;
pub mod kernels;
pub mod transform;

pub use data::{generate_transform_data, load_transform_data, write_transform_data};
pub use kernels::Kernel;
pub use transform::{Provenance, SquareMatrix, TransformData, SEARCH_HALF_WIDTH, SHIFT_RANGE};

use crate::error::{Error, Result};

/// Benchmark function number, 1 through 10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionId(u8);

impl FunctionId {
    pub const COUNT: u8 = 10;

    pub fn new(id: u8) -> Result<Self> {
        if (1..=Self::COUNT).contains(&id) {
            Ok(FunctionId(id))
        } else {
            Err(Error::usage(format!(
                "function id {id} out of range 1..={}",
                Self::COUNT
            )))
        }
    }

    #[must_use]
    pub fn get(self) -> u8 {
        self.0
    }

    /// All ten ids in order.
    pub fn all() -> impl Iterator<Item = FunctionId> {
        (1..=Self::COUNT).map(FunctionId)
    }
}

impl std::fmt::Display for FunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F{:02}", self.0)
    }
}

/// Structural class of a benchmark function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Unimodal,
    Basic,
    Hybrid,
    Composition,
}

impl FunctionKind {
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            FunctionKind::Unimodal => "unimodal",
            FunctionKind::Basic => "basic",
            FunctionKind::Hybrid => "hybrid",
            FunctionKind::Composition => "composition",
        }
    }
}

/// Static definition of one benchmark function: kernels, structural
/// parameters, and the competition its transform data ships with.
#[derive(Debug)]
pub struct FunctionDef {
    pub id: u8,
    pub name: &'static str,
    pub kind: FunctionKind,
    pub kernels: &'static [Kernel],
    /// Hybrid chunk proportions (empty otherwise); sums to 1.
    pub proportions: &'static [f64],
    /// Composition coverage radii (empty otherwise).
    pub sigma: &'static [f64],
    /// Composition height scales (empty otherwise).
    pub lambda: &'static [f64],
    /// Composition biases, strictly increasing from 0 (empty otherwise).
    pub bias: &'static [f64],
    /// Originating competition entry for the transform-data files.
    pub source: &'static str,
}

impl FunctionDef {
    /// Number of (shift, rotation) pairs the function needs: one per
    /// component for compositions, a single pair otherwise.
    #[must_use]
    pub fn transform_sets(&self) -> usize {
        match self.kind {
            FunctionKind::Composition => self.kernels.len(),
            _ => 1,
        }
    }

    #[must_use]
    pub fn needs_permutation(&self) -> bool {
        self.kind == FunctionKind::Hybrid
    }
}

static CATALOG: [FunctionDef; 10] = [
    FunctionDef {
        id: 1,
        name: "Zakharov",
        kind: FunctionKind::Unimodal,
        kernels: &[Kernel::Zakharov],
        proportions: &[],
        sigma: &[],
        lambda: &[],
        bias: &[],
        source: "CEC'17 F03",
    },
    FunctionDef {
        id: 2,
        name: "Rosenbrock",
        kind: FunctionKind::Basic,
        kernels: &[Kernel::Rosenbrock],
        proportions: &[],
        sigma: &[],
        lambda: &[],
        bias: &[],
        source: "CEC'17 F04",
    },
    FunctionDef {
        id: 3,
        name: "Rastrigin",
        kind: FunctionKind::Basic,
        kernels: &[Kernel::Rastrigin],
        proportions: &[],
        sigma: &[],
        lambda: &[],
        bias: &[],
        source: "CEC'17 F05",
    },
    FunctionDef {
        id: 4,
        name: "Schwefel",
        kind: FunctionKind::Basic,
        kernels: &[Kernel::Schwefel],
        proportions: &[],
        sigma: &[],
        lambda: &[],
        bias: &[],
        source: "CEC'17 F10",
    },
    FunctionDef {
        id: 5,
        name: "Hybrid 1",
        kind: FunctionKind::Hybrid,
        kernels: &[Kernel::BentCigar, Kernel::HgBat, Kernel::Rastrigin],
        proportions: &[0.3, 0.3, 0.4],
        sigma: &[],
        lambda: &[],
        bias: &[],
        source: "CEC'14 F18",
    },
    FunctionDef {
        id: 6,
        name: "Hybrid 2",
        kind: FunctionKind::Hybrid,
        kernels: &[
            Kernel::ExpandedSchafferF6,
            Kernel::HgBat,
            Kernel::Rosenbrock,
            Kernel::ModifiedSchwefel,
        ],
        proportions: &[0.2, 0.2, 0.3, 0.3],
        sigma: &[],
        lambda: &[],
        bias: &[],
        source: "CEC'17 F16",
    },
    FunctionDef {
        id: 7,
        name: "Hybrid 3",
        kind: FunctionKind::Hybrid,
        kernels: &[
            Kernel::Katsuura,
            Kernel::HappyCat,
            Kernel::GriewankRosenbrock,
            Kernel::ModifiedSchwefel,
            Kernel::Ackley,
        ],
        proportions: &[0.3, 0.2, 0.2, 0.1, 0.2],
        sigma: &[],
        lambda: &[],
        bias: &[],
        source: "CEC'14 F22",
    },
    FunctionDef {
        id: 8,
        name: "Composition 1",
        kind: FunctionKind::Composition,
        kernels: &[Kernel::Rastrigin, Kernel::Griewank, Kernel::ModifiedSchwefel],
        proportions: &[],
        sigma: &[10.0, 20.0, 30.0],
        lambda: &[1.0, 10.0, 1.0],
        bias: &[0.0, 100.0, 200.0],
        source: "CEC'17 F22",
    },
    FunctionDef {
        id: 9,
        name: "Composition 2",
        kind: FunctionKind::Composition,
        kernels: &[
            Kernel::Ackley,
            Kernel::HighConditionedElliptic,
            Kernel::Griewank,
            Kernel::Rastrigin,
        ],
        proportions: &[],
        sigma: &[10.0, 20.0, 30.0, 40.0],
        lambda: &[10.0, 1e-6, 10.0, 1.0],
        bias: &[0.0, 100.0, 200.0, 300.0],
        source: "CEC'17 F24",
    },
    FunctionDef {
        id: 10,
        name: "Composition 3",
        kind: FunctionKind::Composition,
        kernels: &[
            Kernel::ExpandedSchafferF6,
            Kernel::ModifiedSchwefel,
            Kernel::Griewank,
            Kernel::Rosenbrock,
            Kernel::Rastrigin,
        ],
        proportions: &[],
        sigma: &[10.0, 20.0, 20.0, 30.0, 40.0],
        lambda: &[0.005, 1.0, 10.0, 1.0, 10.0],
        bias: &[0.0, 100.0, 200.0, 300.0, 400.0],
        source: "CEC'17 F26",
    },
];

/// The full benchmark definition table.
#[must_use]
pub fn catalog() -> &'static [FunctionDef; 10] {
    &CATALOG
}

/// Definition for one function id.
#[must_use]
pub fn function_def(id: FunctionId) -> &'static FunctionDef {
    &CATALOG[(id.get() - 1) as usize]
}

/// Hybrid chunk sizes: `round(p_i * D)` with the last chunk absorbing the
/// rounding remainder. Errors when any chunk would be empty.
pub fn hybrid_chunk_sizes(proportions: &[f64], dim: usize) -> Result<Vec<usize>> {
    let n = proportions.len();
    let mut sizes = Vec::with_capacity(n);
    let mut used = 0usize;
    for &p in &proportions[..n - 1] {
        let s = (p * dim as f64).round() as usize;
        sizes.push(s);
        used += s;
    }
    if used >= dim {
        return Err(Error::config(format!(
            "hybrid chunk sizes degenerate at dimension {dim}: leading chunks consume {used}"
        )));
    }
    sizes.push(dim - used);
    if sizes.contains(&0) {
        return Err(Error::config(format!(
            "hybrid chunk sizes degenerate at dimension {dim}: {sizes:?}"
        )));
    }
    debug_assert_eq!(sizes.iter().sum::<usize>(), dim);
    Ok(sizes)
}

/// Reusable evaluation buffers. One per calling thread; see
/// [`ObjectiveSpec::evaluate_with`].
#[derive(Debug, Clone)]
pub struct EvalScratch {
    shifted: Vec<f64>,
    rotated: Vec<f64>,
    permuted: Vec<f64>,
    weights: Vec<f64>,
}

/// A fully instantiated benchmark function: static definition plus transform
/// data at a concrete dimension. Immutable after construction; evaluation is
/// pure and safe to call from any number of threads.
#[derive(Debug, Clone)]
pub struct ObjectiveSpec {
    id: FunctionId,
    def: &'static FunctionDef,
    dim: usize,
    transforms: TransformData,
    /// Hybrid chunk offsets as (start, len); empty for other kinds.
    chunks: Vec<(usize, usize)>,
}

impl ObjectiveSpec {
    pub fn new(id: FunctionId, dim: usize, transforms: TransformData) -> Result<Self> {
        if dim < 2 {
            return Err(Error::config(format!(
                "benchmark functions need dimension >= 2, got {dim}"
            )));
        }
        let def = function_def(id);
        transforms.validate(def.transform_sets(), dim, def.needs_permutation())?;
        let chunks = if def.kind == FunctionKind::Hybrid {
            let sizes = hybrid_chunk_sizes(def.proportions, dim)?;
            let mut start = 0;
            sizes
                .iter()
                .map(|&len| {
                    let c = (start, len);
                    start += len;
                    c
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(ObjectiveSpec {
            id,
            def,
            dim,
            transforms,
            chunks,
        })
    }

    #[must_use]
    pub fn function_id(&self) -> FunctionId {
        self.id
    }

    #[must_use]
    pub fn def(&self) -> &'static FunctionDef {
        self.def
    }

    #[must_use]
    pub fn kind(&self) -> FunctionKind {
        self.def.kind
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn transforms(&self) -> &TransformData {
        &self.transforms
    }

    /// Hybrid chunk layout as (start, len) pairs into the shuffled vector.
    #[must_use]
    pub fn chunk_layout(&self) -> &[(usize, usize)] {
        &self.chunks
    }

    /// Search box, identical for all functions.
    #[must_use]
    pub fn bounds(&self) -> (f64, f64) {
        (-SEARCH_HALF_WIDTH, SEARCH_HALF_WIDTH)
    }

    /// The location of the global optimum (the first shift vector); the
    /// optimum value is 0 for every function in the benchmark.
    #[must_use]
    pub fn optimum(&self) -> &[f64] {
        &self.transforms.shifts[0]
    }

    #[must_use]
    pub fn scratch(&self) -> EvalScratch {
        EvalScratch {
            shifted: vec![0.0; self.dim],
            rotated: vec![0.0; self.dim],
            permuted: vec![0.0; self.dim],
            weights: vec![0.0; self.def.kernels.len()],
        }
    }

    /// Convenience wrapper allocating fresh scratch buffers.
    #[must_use]
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.evaluate_with(x, &mut self.scratch())
    }

    /// Evaluates the objective at `x`, reusing the caller's buffers.
    pub fn evaluate_with(&self, x: &[f64], s: &mut EvalScratch) -> f64 {
        assert_eq!(x.len(), self.dim, "input dimension mismatch");
        match self.def.kind {
            FunctionKind::Unimodal | FunctionKind::Basic => {
                let kernel = self.def.kernels[0];
                transform::shift_scale(
                    x,
                    &self.transforms.shifts[0],
                    kernel.input_scale(),
                    &mut s.shifted,
                );
                self.transforms.rotations[0].mul_vec(&s.shifted, &mut s.rotated);
                kernel.evaluate(&s.rotated)
            }
            FunctionKind::Hybrid => self.eval_hybrid(x, s),
            FunctionKind::Composition => self.eval_composition(x, s),
        }
    }

    /// Hybrid path: unscaled shift and rotation, coordinate shuffle, then
    /// each chunk is scaled into its kernel's domain and evaluated; the
    /// chunk values sum to the objective.
    fn eval_hybrid(&self, x: &[f64], s: &mut EvalScratch) -> f64 {
        transform::shift_scale(x, &self.transforms.shifts[0], 1.0, &mut s.shifted);
        self.transforms.rotations[0].mul_vec(&s.shifted, &mut s.rotated);
        let perm = self
            .transforms
            .permutation
            .as_ref()
            .expect("validated hybrid has a permutation");
        for (k, &p) in perm.iter().enumerate() {
            s.permuted[k] = s.rotated[p];
        }
        let mut total = 0.0;
        for (kernel, &(start, len)) in self.def.kernels.iter().zip(&self.chunks) {
            let scale = kernel.input_scale();
            let chunk = &mut s.shifted[..len]; // reuse as chunk buffer
            for (c, &v) in chunk.iter_mut().zip(&s.permuted[start..start + len]) {
                *c = scale * v;
            }
            total += kernel.evaluate(chunk);
        }
        total
    }

    /// Composition path: distance-based weights in the unrotated space, then
    /// a weighted sum of per-component transformed kernel values offset by
    /// their biases.
    fn eval_composition(&self, x: &[f64], s: &mut EvalScratch) -> f64 {
        compute_weights_into(x, &self.transforms.shifts, self.def.sigma, &mut s.weights);
        let mut total = 0.0;
        for (i, kernel) in self.def.kernels.iter().enumerate() {
            let w = s.weights[i];
            if w == 0.0 {
                continue;
            }
            transform::shift_scale(
                x,
                &self.transforms.shifts[i],
                kernel.input_scale(),
                &mut s.shifted,
            );
            self.transforms.rotations[i].mul_vec(&s.shifted, &mut s.rotated);
            let g = kernel.evaluate(&s.rotated);
            total += w * (self.def.lambda[i] * g + self.def.bias[i]);
        }
        total
    }
}

/// The shift/scale/rotate pipeline for one component:
/// `z = M_c * (scale_c * (x - o_c))`. The scale is the component kernel's
/// domain factor, except for hybrids whose outer stage is unscaled (chunks
/// are scaled per kernel during evaluation).
pub fn transform_input(spec: &ObjectiveSpec, x: &[f64], component: usize) -> Result<Vec<f64>> {
    if x.len() != spec.dim() {
        return Err(Error::usage(format!(
            "input has dimension {}, spec expects {}",
            x.len(),
            spec.dim()
        )));
    }
    let sets = spec.def().transform_sets();
    if component >= sets {
        return Err(Error::usage(format!(
            "component {component} out of range for {} transform sets",
            sets
        )));
    }
    let scale = match spec.kind() {
        FunctionKind::Hybrid => 1.0,
        _ => spec.def().kernels[component].input_scale(),
    };
    let mut shifted = vec![0.0; spec.dim()];
    transform::shift_scale(x, &spec.transforms().shifts[component], scale, &mut shifted);
    let mut rotated = vec![0.0; spec.dim()];
    spec.transforms().rotations[component].mul_vec(&shifted, &mut rotated);
    Ok(rotated)
}

/// Normalized composition weights at `x`.
///
/// `w_i = exp(-S_i / (2 D sigma_i^2)) / sqrt(S_i)` with
/// `S_i = sum_j (x_j - o_ij)^2`, normalized to sum to 1. When `x` coincides
/// with one or more shift points the weight concentrates entirely on those
/// components, preserving continuity toward each optimum.
#[must_use]
pub fn compute_weights(x: &[f64], spec: &ObjectiveSpec) -> Vec<f64> {
    assert_eq!(spec.kind(), FunctionKind::Composition, "weights need a composition function");
    let mut w = vec![0.0; spec.def().kernels.len()];
    compute_weights_into(x, &spec.transforms().shifts, spec.def().sigma, &mut w);
    w
}

fn compute_weights_into(x: &[f64], shifts: &[Vec<f64>], sigma: &[f64], out: &mut [f64]) {
    let d = x.len() as f64;
    let mut exact = 0usize;
    for ((w, shift), &sg) in out.iter_mut().zip(shifts).zip(sigma) {
        let s2: f64 = x
            .iter()
            .zip(shift)
            .map(|(&xi, &oi)| (xi - oi) * (xi - oi))
            .sum();
        if s2 == 0.0 {
            exact += 1;
            *w = f64::INFINITY; // marker; resolved below
        } else {
            *w = (-s2 / (2.0 * d * sg * sg)).exp() / s2.sqrt();
        }
    }
    if exact > 0 {
        let share = 1.0 / exact as f64;
        for w in out.iter_mut() {
            *w = if w.is_infinite() { share } else { 0.0 };
        }
        return;
    }
    let total: f64 = out.iter().sum();
    for w in out.iter_mut() {
        *w /= total;
    }
}
