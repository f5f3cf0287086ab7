//! Shared helpers for the integration and acceptance tests.
//!
//! Each test target compiles this module independently and uses a different
//! subset of it.
#![allow(dead_code)]

pub mod oracle;

use devolve::functions::{generate_transform_data, FunctionId, ObjectiveSpec};
use devolve::rng::{RandomSource, RngStream};

/// Builds a function instance with generated transform data.
pub fn spec_with_generated_data(id: u8, dim: usize, seed: u64) -> ObjectiveSpec {
    let fid = FunctionId::new(id).expect("valid function id");
    let data = generate_transform_data(seed, fid, dim).expect("generate transform data");
    ObjectiveSpec::new(fid, dim, data).expect("valid spec")
}

/// Uniform random point in the search box.
pub fn random_point(dim: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..dim).map(|_| rng.next_range(-100.0, 100.0)).collect()
}

/// Relative-tolerance comparison with an absolute floor for values near 0.
pub fn close_rel(a: f64, b: f64, rel: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= rel * scale.max(1e-12)
}
