//! Transform-data file IO and seeded generation.
//!
//! Files are whitespace-separated decimal text in the layout the CEC
//! competition distributions use:
//!
//! - shift files: one vector per line, one line per component; lines may
//!   carry more values than the target dimension (the distributions store
//!   100-wide rows), in which case the leading `D` values are used;
//! - rotation files: row-major `D x D` blocks, one block per component,
//!   `n * D * D` values in total;
//! - shuffle files: `D` 1-based integers forming a permutation, converted
//!   to 0-based on load.
//!
//! Values are written with Rust's shortest round-trip float formatting, so a
//! generate/write/load cycle reproduces every value bit for bit.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use super::transform::{
    validate_permutation, Provenance, SquareMatrix, TransformData, SHIFT_RANGE,
};
use super::{function_def, FunctionId};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, RandomSource, RngStream};

/// Orthogonality tolerance beyond which a loaded rotation matrix is flagged
/// (but still accepted; file precision limits are expected).
pub const LOAD_ORTHOGONALITY_WARN: f64 = 1e-6;

// Stream ids within a function's derived seed space.
const SHIFT_STREAM: u64 = 1_000;
const ROTATION_STREAM: u64 = 2_000;
const SHUFFLE_STREAM: u64 = 3_000;

/// File name for a function's shift vectors.
#[must_use]
pub fn shift_file_name(id: FunctionId, dim: usize) -> String {
    format!("{id}_shift_D{dim}.txt")
}

/// File name for a function's rotation matrices.
#[must_use]
pub fn rotation_file_name(id: FunctionId, dim: usize) -> String {
    format!("{id}_rotation_D{dim}.txt")
}

/// File name for a hybrid function's shuffle permutation.
#[must_use]
pub fn shuffle_file_name(id: FunctionId, dim: usize) -> String {
    format!("{id}_shuffle_D{dim}.txt")
}

/// The data files a function needs at a given dimension.
#[must_use]
pub fn expected_files(id: FunctionId, dim: usize) -> Vec<String> {
    let def = function_def(id);
    let mut files = vec![shift_file_name(id, dim), rotation_file_name(id, dim)];
    if def.needs_permutation() {
        files.push(shuffle_file_name(id, dim));
    }
    files
}

/// Expected files that are absent from `dir`.
#[must_use]
pub fn missing_files(dir: &Path, id: FunctionId, dim: usize) -> Vec<PathBuf> {
    expected_files(id, dim)
        .into_iter()
        .map(|f| dir.join(f))
        .filter(|p| !p.is_file())
        .collect()
}

/// Deterministically generates shift vectors, orthogonal rotation matrices,
/// and (for hybrids) a shuffle permutation. The output is a pure function of
/// `(seed, function_id, dim)`.
pub fn generate_transform_data(seed: u64, id: FunctionId, dim: usize) -> Result<TransformData> {
    if dim < 2 {
        return Err(Error::config(format!(
            "transform data needs dimension >= 2, got {dim}"
        )));
    }
    let def = function_def(id);
    // Validate hybrid chunking up front so gen-data fails loudly on
    // dimensions the function cannot support.
    if def.needs_permutation() {
        super::hybrid_chunk_sizes(def.proportions, dim)?;
    }
    let base = derive_seed(seed, u64::from(id.get()), dim as u64);
    let sets = def.transform_sets();

    let shifts = (0..sets)
        .map(|c| {
            let mut rng = RngStream::new(base, SHIFT_STREAM + c as u64);
            (0..dim)
                .map(|_| rng.next_range(-SHIFT_RANGE, SHIFT_RANGE))
                .collect()
        })
        .collect();

    let rotations = (0..sets)
        .map(|c| {
            let mut rng = RngStream::new(base, ROTATION_STREAM + c as u64);
            SquareMatrix::random_orthogonal(dim, &mut rng)
        })
        .collect();

    let permutation = def.needs_permutation().then(|| {
        let mut rng = RngStream::new(base, SHUFFLE_STREAM);
        let mut perm: Vec<usize> = (0..dim).collect();
        for i in (1..dim).rev() {
            perm.swap(i, rng.next_index(i + 1));
        }
        perm
    });

    Ok(TransformData {
        shifts,
        rotations,
        permutation,
        provenance: Provenance::Generated,
    })
}

/// Writes a function's transform data into `dir` using the documented file
/// layout. Deterministic input produces byte-identical files.
pub fn write_transform_data(
    dir: &Path,
    id: FunctionId,
    dim: usize,
    data: &TransformData,
) -> Result<()> {
    let def = function_def(id);
    data.validate(def.transform_sets(), dim, def.needs_permutation())?;
    fs::create_dir_all(dir)?;

    let mut shift = String::new();
    for s in &data.shifts {
        push_row(&mut shift, s);
    }
    write_atomic(&dir.join(shift_file_name(id, dim)), &shift)?;

    let mut rot = String::new();
    for m in &data.rotations {
        for r in 0..dim {
            push_row(&mut rot, m.row(r));
        }
    }
    write_atomic(&dir.join(rotation_file_name(id, dim)), &rot)?;

    if let Some(perm) = &data.permutation {
        let line = perm
            .iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ");
        write_atomic(&dir.join(shuffle_file_name(id, dim)), &format!("{line}\n"))?;
    }
    Ok(())
}

fn push_row(buf: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            buf.push(' ');
        }
        buf.push_str(&v.to_string());
    }
    buf.push('\n');
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Loads a function's transform data from `dir`, returning the data plus any
/// non-fatal warnings (currently: rotation matrices whose orthogonality
/// error exceeds [`LOAD_ORTHOGONALITY_WARN`]).
pub fn load_transform_data(
    dir: &Path,
    id: FunctionId,
    dim: usize,
) -> Result<(TransformData, Vec<String>)> {
    let def = function_def(id);
    let sets = def.transform_sets();
    let mut warnings = Vec::new();

    let shift_path = dir.join(shift_file_name(id, dim));
    let shifts = load_shift_file(&shift_path, sets, dim)?;

    let rot_path = dir.join(rotation_file_name(id, dim));
    let rotations = load_rotation_file(&rot_path, sets, dim)?;
    for (i, m) in rotations.iter().enumerate() {
        let err = m.orthogonality_error();
        if err > LOAD_ORTHOGONALITY_WARN {
            warnings.push(format!(
                "{}: rotation matrix {i} deviates from orthogonality by {err:.2e} (accepted)",
                rot_path.display()
            ));
        }
    }

    let permutation = if def.needs_permutation() {
        let shuffle_path = dir.join(shuffle_file_name(id, dim));
        Some(load_shuffle_file(&shuffle_path, dim)?)
    } else {
        None
    };

    let data = TransformData {
        shifts,
        rotations,
        permutation,
        provenance: Provenance::LoadedFromFile,
    };
    data.validate(sets, dim, def.needs_permutation())
        .map_err(|e| Error::load(dir.join(shift_file_name(id, dim)), 0, e.to_string()))?;
    Ok((data, warnings))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::load(path, 0, format!("cannot read file: {e}")))
}

/// One vector per line; lines may carry extra trailing values (CEC rows are
/// stored at the maximum dimension), the first `dim` are used.
fn load_shift_file(path: &Path, components: usize, dim: usize) -> Result<Vec<Vec<f64>>> {
    let text = read_file(path)?;
    let mut shifts = Vec::with_capacity(components);
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if shifts.len() == components {
            break; // distribution files may hold rows for more components
        }
        let mut row = Vec::with_capacity(dim);
        for tok in line.split_whitespace() {
            if row.len() == dim {
                break;
            }
            let v: f64 = tok.parse().map_err(|_| {
                Error::load(path, lineno + 1, format!("invalid number {tok:?}"))
            })?;
            row.push(v);
        }
        if row.len() < dim {
            return Err(Error::load(
                path,
                lineno + 1,
                format!("shift row has {} values, expected at least {dim}", row.len()),
            ));
        }
        shifts.push(row);
    }
    if shifts.len() < components {
        return Err(Error::load(
            path,
            0,
            format!("found {} shift rows, expected {components}", shifts.len()),
        ));
    }
    Ok(shifts)
}

/// Row-major `dim x dim` blocks, one per component, exactly
/// `components * dim * dim` values in total.
fn load_rotation_file(path: &Path, components: usize, dim: usize) -> Result<Vec<SquareMatrix>> {
    let text = read_file(path)?;
    let expected = components * dim * dim;
    let mut values = Vec::with_capacity(expected);
    for (lineno, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| {
                Error::load(path, lineno + 1, format!("invalid number {tok:?}"))
            })?;
            values.push(v);
        }
    }
    if values.len() != expected {
        return Err(Error::load(
            path,
            0,
            format!(
                "rotation file holds {} values, expected {expected} ({components} x {dim} x {dim})",
                values.len()
            ),
        ));
    }
    values
        .chunks_exact(dim * dim)
        .map(|block| SquareMatrix::from_rows(dim, block.to_vec()))
        .collect()
}

/// Exactly `dim` 1-based integers forming a bijection on 1..=dim.
fn load_shuffle_file(path: &Path, dim: usize) -> Result<Vec<usize>> {
    let text = read_file(path)?;
    let mut perm = Vec::with_capacity(dim);
    for (lineno, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| {
                Error::load(path, lineno + 1, format!("invalid index {tok:?}"))
            })?;
            if v == 0 || v > dim {
                return Err(Error::load(
                    path,
                    lineno + 1,
                    format!("index {v} out of range 1..={dim}"),
                ));
            }
            perm.push(v - 1);
        }
    }
    if perm.len() != dim {
        return Err(Error::load(
            path,
            0,
            format!("shuffle file holds {} indices, expected {dim}", perm.len()),
        ));
    }
    validate_permutation(&perm, dim).map_err(|e| Error::load(path, 0, e.to_string()))?;
    Ok(perm)
}
