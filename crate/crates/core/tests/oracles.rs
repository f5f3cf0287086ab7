//! Oracle-equivalence tests: the optimized evaluators against independent
//! straight-from-formula references at randomized points.

mod common;

use common::oracle::{kernel_reference, objective_reference, transform_reference};
use common::{close_rel, random_point, spec_with_generated_data};
use devolve::functions::{transform_input, FunctionId, Kernel, ObjectiveSpec, TransformData};
use devolve::rng::{RandomSource, RngStream};

#[test]
fn kernels_match_reference_at_random_points() {
    let mut rng = RngStream::new(20_240_601, 0);
    for kernel in Kernel::ALL {
        let hw = kernel.domain_half_width();
        for d in [2usize, 5, 17] {
            for _ in 0..5 {
                let z: Vec<f64> = (0..d).map(|_| rng.next_range(-hw, hw)).collect();
                let got = kernel.evaluate(&z);
                let want = kernel_reference(kernel, &z);
                assert!(
                    close_rel(got, want, 1e-12),
                    "{} at {z:?}: {got:e} vs reference {want:e}",
                    kernel.name()
                );
            }
        }
    }
}

#[test]
fn zakharov_and_rastrigin_hand_values() {
    assert_eq!(Kernel::Zakharov.evaluate(&[1.0, 1.0]), 9.3125);
    assert!((Kernel::Rastrigin.evaluate(&[1.0, 0.0]) - 1.0).abs() <= 1e-12);
}

#[test]
fn transform_matches_reference_pipeline() {
    let mut rng = RngStream::new(7, 7);
    for id in [1u8, 3, 8, 10] {
        let spec = spec_with_generated_data(id, 12, 99);
        let sets = spec.def().transform_sets();
        for component in 0..sets {
            let x = random_point(12, &mut rng);
            let got = transform_input(&spec, &x, component).unwrap();
            let scale = spec.def().kernels[component].domain_half_width() / 100.0;
            let want = transform_reference(
                &x,
                &spec.transforms().shifts[component],
                spec.transforms().rotations[component].as_slice(),
                scale,
            );
            for (g, w) in got.iter().zip(&want) {
                assert!(close_rel(*g, *w, 1e-12));
            }
        }
    }
}

#[test]
fn hybrid_matches_chunked_reference() {
    let mut rng = RngStream::new(123, 1);
    for (id, dim) in [(5u8, 50usize), (6, 50), (7, 100)] {
        let spec = spec_with_generated_data(id, dim, 4242);
        for _ in 0..40 {
            let x = random_point(dim, &mut rng);
            let got = spec.evaluate(&x);
            let want = objective_reference(&spec, &x);
            assert!(
                close_rel(got, want, 1e-10),
                "F{id:02} D{dim}: {got:e} vs {want:e}"
            );
        }
    }
}

#[test]
fn composition_matches_weighted_reference() {
    let mut rng = RngStream::new(321, 2);
    for (id, dim) in [(8u8, 50usize), (9, 50), (10, 100)] {
        let spec = spec_with_generated_data(id, dim, 777);
        for _ in 0..40 {
            let x = random_point(dim, &mut rng);
            let got = spec.evaluate(&x);
            let want = objective_reference(&spec, &x);
            assert!(
                close_rel(got, want, 1e-10),
                "F{id:02} D{dim}: {got:e} vs {want:e}"
            );
        }
    }
}

#[test]
fn basics_match_full_reference() {
    let mut rng = RngStream::new(11, 3);
    for id in 1u8..=4 {
        let spec = spec_with_generated_data(id, 30, 31);
        for _ in 0..40 {
            let x = random_point(30, &mut rng);
            assert!(close_rel(
                spec.evaluate(&x),
                objective_reference(&spec, &x),
                1e-11
            ));
        }
    }
}

#[test]
fn weights_match_direct_formula_in_two_dimensions() {
    // n=2 active components, hand-placed shifts, sigma from the catalog row.
    let fid = FunctionId::new(8).unwrap();
    let dim = 2;
    let mut data = TransformData::identity(3, dim, false);
    data.shifts[0] = vec![3.0, -4.0];
    data.shifts[1] = vec![-30.0, 40.0];
    data.shifts[2] = vec![70.0, 70.0];
    let spec = ObjectiveSpec::new(fid, dim, data).unwrap();
    let sigma = spec.def().sigma;
    let mut rng = RngStream::new(55, 0);
    for _ in 0..50 {
        let x = random_point(dim, &mut rng);
        let got = devolve::functions::compute_weights(&x, &spec);
        // direct scalar evaluation of the published formula
        let mut raw = [0.0f64; 3];
        for i in 0..3 {
            let s2: f64 = (x[0] - spec.transforms().shifts[i][0]).powi(2)
                + (x[1] - spec.transforms().shifts[i][1]).powi(2);
            raw[i] = 1.0 / s2.sqrt() * (-s2 / (2.0 * dim as f64 * sigma[i] * sigma[i])).exp();
        }
        let total: f64 = raw.iter().sum();
        for i in 0..3 {
            assert!(close_rel(got[i], raw[i] / total, 1e-12));
        }
        assert!((got.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn optimum_identity_on_generated_data() {
    for id in 1u8..=10 {
        for dim in [10usize, 50] {
            let spec = spec_with_generated_data(id, dim, 2025);
            let f = spec.evaluate(spec.optimum());
            assert!(
                f.abs() <= 1e-8,
                "F{id:02} D{dim} at shift point: {f:e}"
            );
        }
    }
}

#[test]
fn rotation_preserves_norms_on_generated_data() {
    let mut rng = RngStream::new(6, 6);
    for id in [2u8, 9] {
        let spec = spec_with_generated_data(id, 40, 88);
        for m in &spec.transforms().rotations {
            assert!(m.orthogonality_error() <= 1e-9);
            let v = random_point(40, &mut rng);
            let mut out = vec![0.0; 40];
            m.mul_vec(&v, &mut out);
            let a: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let b: f64 = out.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }
    }
}
