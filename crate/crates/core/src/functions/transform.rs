//! Input transforms: shift, domain scaling, rotation, and shuffling.
//!
//! The benchmark search box is [-100, 100] in every dimension. A component's
//! input pipeline is `z = M * (scale * (x - o))`: subtract the shift vector,
//! scale into the kernel's native domain, then rotate. Hybrid functions add a
//! coordinate shuffle after an unscaled shift/rotate stage.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Search-box half-width shared by all benchmark functions.
pub const SEARCH_HALF_WIDTH: f64 = 100.0;
/// Shift components are drawn from [-80, 80] to keep optima off the walls.
pub const SHIFT_RANGE: f64 = 80.0;
/// Generated rotation matrices must be orthogonal to this tolerance.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn from_rows(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::usage(format!(
                "matrix data length {} does not match dimension {dim}",
                data.len()
            )));
        }
        Ok(SquareMatrix { dim, data })
    }

    #[must_use]
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        SquareMatrix { dim, data }
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// `out = M * v`.
    pub fn mul_vec(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for (o, row) in out.iter_mut().zip(self.data.chunks_exact(self.dim)) {
            *o = row.iter().zip(v).map(|(&m, &x)| m * x).sum();
        }
    }

    /// Largest absolute entry of `M * M^T - I`.
    #[must_use]
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Random orthogonal matrix: Gram-Schmidt on a Gaussian matrix, with a
    /// second orthogonalization pass to push the error well below tolerance.
    #[must_use]
    pub fn random_orthogonal(dim: usize, rng: &mut RngStream) -> Self {
        let mut rows = vec![vec![0.0f64; dim]; dim];
        for row in &mut rows {
            let mut j = 0;
            while j < dim {
                let (a, b) = rng.next_normal_pair();
                row[j] = a;
                if j + 1 < dim {
                    row[j + 1] = b;
                }
                j += 2;
            }
        }
        for _pass in 0..2 {
            for i in 0..dim {
                let (done, rest) = rows.split_at_mut(i);
                let row = &mut rest[0];
                for prev in done.iter() {
                    let proj: f64 = row.iter().zip(prev.iter()).map(|(a, b)| a * b).sum();
                    for (v, p) in row.iter_mut().zip(prev) {
                        *v -= proj * p;
                    }
                }
                let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
                for v in row.iter_mut() {
                    *v /= norm;
                }
            }
        }
        let data = rows.into_iter().flatten().collect();
        SquareMatrix { dim, data }
    }
}

/// Where a function's transform data came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    LoadedFromFile,
    Generated,
}

/// Shift vectors, rotation matrices, and the optional shuffle permutation
/// for one benchmark function. Composition functions carry one shift and one
/// rotation per component; all others carry exactly one of each.
#[derive(Debug, Clone)]
pub struct TransformData {
    pub shifts: Vec<Vec<f64>>,
    pub rotations: Vec<SquareMatrix>,
    pub permutation: Option<Vec<usize>>,
    pub provenance: Provenance,
}

impl TransformData {
    /// Identity transforms: zero shifts, identity rotations, trivial shuffle.
    /// Useful for tests that need the optimum at the origin.
    #[must_use]
    pub fn identity(components: usize, dim: usize, with_permutation: bool) -> Self {
        TransformData {
            shifts: vec![vec![0.0; dim]; components],
            rotations: (0..components).map(|_| SquareMatrix::identity(dim)).collect(),
            permutation: with_permutation.then(|| (0..dim).collect()),
            provenance: Provenance::Generated,
        }
    }

    pub fn validate(&self, components: usize, dim: usize, needs_permutation: bool) -> Result<()> {
        if self.shifts.len() != components || self.rotations.len() != components {
            return Err(Error::config(format!(
                "expected {components} shift vectors and rotation matrices, got {} and {}",
                self.shifts.len(),
                self.rotations.len()
            )));
        }
        for (i, s) in self.shifts.iter().enumerate() {
            if s.len() != dim {
                return Err(Error::config(format!(
                    "shift vector {i} has length {}, expected {dim}",
                    s.len()
                )));
            }
            if let Some(v) = s.iter().find(|v| !v.is_finite() || v.abs() > SHIFT_RANGE) {
                return Err(Error::config(format!(
                    "shift vector {i} component {v} outside [-{SHIFT_RANGE}, {SHIFT_RANGE}]"
                )));
            }
        }
        for (i, m) in self.rotations.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::config(format!(
                    "rotation matrix {i} has dimension {}, expected {dim}",
                    m.dim()
                )));
            }
        }
        match (&self.permutation, needs_permutation) {
            (None, true) => {
                return Err(Error::config("hybrid function requires a shuffle permutation"))
            }
            (Some(p), _) => validate_permutation(p, dim)?,
            (None, false) => {}
        }
        Ok(())
    }
}

pub(crate) fn validate_permutation(perm: &[usize], dim: usize) -> Result<()> {
    if perm.len() != dim {
        return Err(Error::config(format!(
            "permutation has length {}, expected {dim}",
            perm.len()
        )));
    }
    let mut seen = vec![false; dim];
    for &p in perm {
        if p >= dim || seen[p] {
            return Err(Error::config(format!(
                "permutation is not a bijection on 0..{dim}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// `out = scale * (x - shift)`.
pub(crate) fn shift_scale(x: &[f64], shift: &[f64], scale: f64, out: &mut [f64]) {
    debug_assert_eq!(x.len(), shift.len());
    for ((o, &xi), &si) in out.iter_mut().zip(x).zip(shift) {
        *o = scale * (xi - si);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matrix_is_orthogonal_and_neutral() {
        let m = SquareMatrix::identity(4);
        assert_eq!(m.orthogonality_error(), 0.0);
        let v = [1.0, -2.0, 3.0, -4.0];
        let mut out = [0.0; 4];
        m.mul_vec(&v, &mut out);
        assert_eq!(out, v);
    }

    #[test]
    fn random_orthogonal_meets_tolerance_and_preserves_norm() {
        for dim in [2, 10, 50] {
            let mut rng = RngStream::new(1234, dim as u64);
            let m = SquareMatrix::random_orthogonal(dim, &mut rng);
            assert!(
                m.orthogonality_error() <= ORTHOGONALITY_TOL,
                "dim {dim}: error {:e}",
                m.orthogonality_error()
            );
            use crate::rng::RandomSource;
            let v: Vec<f64> = (0..dim).map(|_| rng.next_range(-100.0, 100.0)).collect();
            let mut out = vec![0.0; dim];
            m.mul_vec(&v, &mut out);
            let n_in = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let n_out = out.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((n_in - n_out).abs() <= 1e-9 * n_in.max(1.0));
        }
    }

    #[test]
    fn permutation_validation_catches_duplicates_and_range() {
        assert!(validate_permutation(&[0, 1, 2], 3).is_ok());
        assert!(validate_permutation(&[0, 1, 1], 3).is_err());
        assert!(validate_permutation(&[0, 1, 3], 3).is_err());
        assert!(validate_permutation(&[0, 1], 3).is_err());
    }

    #[test]
    fn shift_scale_pipeline() {
        let x = [10.0, -10.0];
        let o = [4.0, 6.0];
        let mut out = [0.0; 2];
        shift_scale(&x, &o, 0.5, &mut out);
        assert_eq!(out, [3.0, -8.0]);
    }
}
