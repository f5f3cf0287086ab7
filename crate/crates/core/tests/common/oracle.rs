//! Independent reference evaluators, written directly from the published
//! closed forms as plain scalar loops. They share no code with the library's
//! evaluation path; the tests compare the two routes numerically.
//!
//! Indexed loops are kept on purpose: the point of this module is to mirror
//! the formulas, not to share idioms with the implementation under test.
#![allow(clippy::needless_range_loop, clippy::manual_slice_fill)]

use devolve::functions::{FunctionKind, Kernel, ObjectiveSpec};

const PI: f64 = std::f64::consts::PI;
const E: f64 = std::f64::consts::E;

/// Reference closed form for one kernel on an already transformed input.
pub fn kernel_reference(kernel: Kernel, z: &[f64]) -> f64 {
    let d = z.len();
    match kernel {
        Kernel::Zakharov => {
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            for i in 0..d {
                s1 += z[i] * z[i];
                s2 += 0.5 * (i as f64 + 1.0) * z[i];
            }
            s1 + s2.powi(2) + s2.powi(4)
        }
        Kernel::Rosenbrock => {
            let mut f = 0.0;
            for i in 0..d - 1 {
                let a = z[i] + 1.0;
                let b = z[i + 1] + 1.0;
                f += 100.0 * (a * a - b).powi(2) + (a - 1.0).powi(2);
            }
            f
        }
        Kernel::Rastrigin => {
            let mut f = 0.0;
            for i in 0..d {
                f += z[i] * z[i] - 10.0 * (2.0 * PI * z[i]).cos() + 10.0;
            }
            f
        }
        Kernel::Schwefel | Kernel::ModifiedSchwefel => {
            let mut sum = 0.0;
            for i in 0..d {
                let w = z[i] + 4.209687462275036e2;
                sum += if w.abs() <= 500.0 {
                    w * w.abs().sqrt().sin()
                } else if w > 500.0 {
                    let r = 500.0 - (w % 500.0);
                    r * r.sqrt().sin() - (w - 500.0).powi(2) / (10_000.0 * d as f64)
                } else {
                    let r = (w.abs() % 500.0) - 500.0;
                    r * (500.0 - (w.abs() % 500.0)).sqrt().sin()
                        - (w + 500.0).powi(2) / (10_000.0 * d as f64)
                };
            }
            4.189828872724338e2 * d as f64 - sum
        }
        Kernel::BentCigar => {
            let mut f = z[0] * z[0];
            for i in 1..d {
                f += 1e6 * z[i] * z[i];
            }
            f
        }
        Kernel::HgBat => {
            let mut r2 = 0.0;
            let mut s = 0.0;
            for i in 0..d {
                let v = z[i] - 1.0;
                r2 += v * v;
                s += v;
            }
            (r2.powi(2) - s.powi(2)).abs().powf(0.5) + (0.5 * r2 + s) / d as f64 + 0.5
        }
        Kernel::ExpandedSchafferF6 => {
            let g = |x: f64, y: f64| {
                let ss = x * x + y * y;
                0.5 + (ss.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * ss).powi(2)
            };
            let mut f = 0.0;
            for i in 0..d - 1 {
                f += g(z[i], z[i + 1]);
            }
            f + g(z[d - 1], z[0])
        }
        Kernel::Katsuura => {
            let mut prod = 1.0;
            for i in 0..d {
                let mut t = 0.0;
                for j in 1..=32 {
                    let p = 2.0f64.powi(j);
                    t += (p * z[i] - (p * z[i] + 0.5).floor()).abs() / p;
                }
                prod *= (1.0 + (i as f64 + 1.0) * t).powf(10.0 / (d as f64).powf(1.2));
            }
            10.0 / (d as f64 * d as f64) * prod - 10.0 / (d as f64 * d as f64)
        }
        Kernel::HappyCat => {
            let mut r2 = 0.0;
            let mut s = 0.0;
            for i in 0..d {
                let v = z[i] - 1.0;
                r2 += v * v;
                s += v;
            }
            (r2 - d as f64).abs().powf(0.25) + (0.5 * r2 + s) / d as f64 + 0.5
        }
        Kernel::GriewankRosenbrock => {
            let mut f = 0.0;
            for i in 0..d {
                let a = z[i] + 1.0;
                let b = z[(i + 1) % d] + 1.0;
                let t = 100.0 * (a * a - b).powi(2) + (a - 1.0).powi(2);
                f += t * t / 4000.0 - t.cos() + 1.0;
            }
            f
        }
        Kernel::Ackley => {
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            for i in 0..d {
                s1 += z[i] * z[i];
                s2 += (2.0 * PI * z[i]).cos();
            }
            -20.0 * (-0.2 * (s1 / d as f64).sqrt()).exp() - (s2 / d as f64).exp() + 20.0 + E
        }
        Kernel::Griewank => {
            let mut s = 0.0;
            let mut p = 1.0;
            for i in 0..d {
                s += z[i] * z[i] / 4000.0;
                p *= (z[i] / ((i as f64) + 1.0).sqrt()).cos();
            }
            s - p + 1.0
        }
        Kernel::HighConditionedElliptic => {
            let mut f = 0.0;
            for i in 0..d {
                let exp = if d > 1 { 6.0 * i as f64 / (d as f64 - 1.0) } else { 0.0 };
                f += 10.0f64.powf(exp) * z[i] * z[i];
            }
            f
        }
    }
}

/// Reference transform: `z = M * (scale * (x - o))`, plain loops.
pub fn transform_reference(x: &[f64], shift: &[f64], rotation: &[f64], scale: f64) -> Vec<f64> {
    let d = x.len();
    let mut y = vec![0.0; d];
    for i in 0..d {
        y[i] = scale * (x[i] - shift[i]);
    }
    let mut z = vec![0.0; d];
    for r in 0..d {
        let mut acc = 0.0;
        for c in 0..d {
            acc += rotation[r * d + c] * y[c];
        }
        z[r] = acc;
    }
    z
}

/// Full reference evaluation of a benchmark function at `x`, recomputing the
/// transform pipeline, chunking, and weighting from the published formulas.
pub fn objective_reference(spec: &ObjectiveSpec, x: &[f64]) -> f64 {
    let d = spec.dim();
    let def = spec.def();
    let t = spec.transforms();
    match spec.kind() {
        FunctionKind::Unimodal | FunctionKind::Basic => {
            let kernel = def.kernels[0];
            let z = transform_reference(
                x,
                &t.shifts[0],
                t.rotations[0].as_slice(),
                kernel.domain_half_width() / 100.0,
            );
            kernel_reference(kernel, &z)
        }
        FunctionKind::Hybrid => {
            let z = transform_reference(x, &t.shifts[0], t.rotations[0].as_slice(), 1.0);
            let perm = t.permutation.as_ref().unwrap();
            let mut shuffled = vec![0.0; d];
            for k in 0..d {
                shuffled[k] = z[perm[k]];
            }
            // round(p_i * D), last chunk takes the remainder
            let n = def.kernels.len();
            let mut sizes = Vec::new();
            let mut used = 0;
            for i in 0..n - 1 {
                let s = (def.proportions[i] * d as f64).round() as usize;
                sizes.push(s);
                used += s;
            }
            sizes.push(d - used);
            let mut f = 0.0;
            let mut start = 0;
            for (i, &len) in sizes.iter().enumerate() {
                let kernel = def.kernels[i];
                let scale = kernel.domain_half_width() / 100.0;
                let chunk: Vec<f64> = shuffled[start..start + len]
                    .iter()
                    .map(|&v| scale * v)
                    .collect();
                f += kernel_reference(kernel, &chunk);
                start += len;
            }
            f
        }
        FunctionKind::Composition => {
            let n = def.kernels.len();
            // w_i = exp(-S_i / (2 D sigma_i^2)) / sqrt(S_i)
            let mut w = vec![0.0; n];
            let mut exact = Vec::new();
            for i in 0..n {
                let mut s2 = 0.0;
                for j in 0..d {
                    s2 += (x[j] - t.shifts[i][j]).powi(2);
                }
                if s2 == 0.0 {
                    exact.push(i);
                } else {
                    w[i] = (-s2 / (2.0 * d as f64 * def.sigma[i] * def.sigma[i])).exp()
                        / s2.sqrt();
                }
            }
            if !exact.is_empty() {
                for v in &mut w {
                    *v = 0.0;
                }
                for &i in &exact {
                    w[i] = 1.0 / exact.len() as f64;
                }
            } else {
                let total: f64 = w.iter().sum();
                for v in &mut w {
                    *v /= total;
                }
            }
            let mut f = 0.0;
            for i in 0..n {
                if w[i] == 0.0 {
                    continue;
                }
                let kernel = def.kernels[i];
                let z = transform_reference(
                    x,
                    &t.shifts[i],
                    t.rotations[i].as_slice(),
                    kernel.domain_half_width() / 100.0,
                );
                let g = kernel_reference(kernel, &z);
                f += w[i] * (def.lambda[i] * g + def.bias[i]);
            }
            f
        }
    }
}
