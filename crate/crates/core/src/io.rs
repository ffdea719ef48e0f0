//! JSON files for algebras and action specifications.
//!
//! Algebra files hold sparse structure tensors with 0-based indices; omitted
//! entries are zero:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "name": "kz2",
//!   "dim": 2,
//!   "basis": ["u_0", "u_1"],
//!   "mult": [[i, j, k, re, im], ...],      // e_i e_j has coefficient on e_k
//!   "comult": [[i, j, k, re, im], ...],    // Δ(e_i) has coefficient on e_j ⊗ e_k
//!   "unit": [[i, re, im], ...],
//!   "counit": [[i, re, im], ...],          // ε(e_i)
//!   "antipode": [[i, j, re, im], ...],     // S(e_i) has coefficient on e_j
//!   "star": [[i, j, re, im], ...]          // e_i* has coefficient on e_j
//! }
//! ```
//!
//! Floats are written in shortest round-trip form, so save then load is
//! bit-exact.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::action::automorphism_preset;
use crate::error::{Error, Result};
use crate::group::CayleyTable;
use crate::hopf::FiniteHopfStarAlgebra;
use crate::linalg::{CMatrix, CVector};
use num_complex::Complex64;

pub const FORMAT_VERSION: u64 = 1;

type Entry3 = (usize, usize, usize, f64, f64);
type Entry2 = (usize, usize, f64, f64);
type Entry1 = (usize, f64, f64);

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    format_version: u64,
    name: String,
    dim: usize,
    basis: Vec<String>,
    mult: Vec<Entry3>,
    comult: Vec<Entry3>,
    unit: Vec<Entry1>,
    counit: Vec<Entry1>,
    antipode: Vec<Entry2>,
    star: Vec<Entry2>,
}

fn parse_err(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        context: context.into(),
        message: message.into(),
    }
}

/// Checks `format_version` before the typed parse so that a newer file is
/// reported as a version mismatch rather than a field error.
fn check_version(text: &str) -> Result<()> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_err("document", e.to_string()))?;
    let found = value
        .get("format_version")
        .ok_or_else(|| parse_err("format_version", "missing field"))?
        .as_u64()
        .ok_or_else(|| parse_err("format_version", "expected a non-negative integer"))?;
    if found != FORMAT_VERSION {
        return Err(Error::SchemaVersionMismatch {
            found,
            expected: FORMAT_VERSION,
        });
    }
    Ok(())
}

/// Typed parse that names the offending field path on failure.
fn parse_typed<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        parse_err(if path == "." { "document".to_string() } else { path }, e.into_inner().to_string())
    })
}

fn check_index(field: &str, pos: usize, idx: usize, n: usize) -> Result<()> {
    if idx >= n {
        return Err(parse_err(
            format!("{field}[{pos}]"),
            format!("index {idx} out of range for dimension {n}"),
        ));
    }
    Ok(())
}

fn num(x: Complex64) -> (f64, f64) {
    (x.re, x.im)
}

pub fn algebra_to_json(a: &FiniteHopfStarAlgebra) -> String {
    let n = a.dim();
    let mut mult = Vec::new();
    let mut comult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let m = a.m(i, j, k);
                if m.norm() != 0.0 {
                    let (re, im) = num(m);
                    mult.push((i, j, k, re, im));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = a.d(i, j, k);
                if d.norm() != 0.0 {
                    let (re, im) = num(d);
                    comult.push((i, j, k, re, im));
                }
            }
        }
    }
    let vec1 = |v: &CVector| -> Vec<Entry1> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| x.norm() != 0.0)
            .map(|(i, x)| (i, x.re, x.im))
            .collect()
    };
    // Column i of a linear map holds the image of e_i.
    let mat = |m: &CMatrix| -> Vec<Entry2> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x = m[(j, i)];
                if x.norm() != 0.0 {
                    out.push((i, j, x.re, x.im));
                }
            }
        }
        out
    };
    let file = AlgebraFile {
        format_version: FORMAT_VERSION,
        name: a.name().to_string(),
        dim: n,
        basis: a.labels().to_vec(),
        mult,
        comult,
        unit: vec1(a.unit()),
        counit: vec1(a.counit()),
        antipode: mat(a.antipode_matrix()),
        star: mat(a.star_matrix()),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn algebra_from_json(text: &str) -> Result<FiniteHopfStarAlgebra> {
    check_version(text)?;
    let f: AlgebraFile = parse_typed(text)?;
    let n = f.dim;
    if n == 0 {
        return Err(parse_err("dim", "dimension must be positive"));
    }
    if f.basis.len() != n {
        return Err(parse_err(
            "basis",
            format!("{} labels for dimension {n}", f.basis.len()),
        ));
    }
    let mut mult = CMatrix::zeros(n, n * n);
    for (pos, &(i, j, k, re, im)) in f.mult.iter().enumerate() {
        for idx in [i, j, k] {
            check_index("mult", pos, idx, n)?;
        }
        mult[(k, i * n + j)] = Complex64::new(re, im);
    }
    let mut comult = CMatrix::zeros(n * n, n);
    for (pos, &(i, j, k, re, im)) in f.comult.iter().enumerate() {
        for idx in [i, j, k] {
            check_index("comult", pos, idx, n)?;
        }
        comult[(j * n + k, i)] = Complex64::new(re, im);
    }
    let vec1 = |field: &str, entries: &[Entry1]| -> Result<CVector> {
        let mut v = CVector::zeros(n);
        for (pos, &(i, re, im)) in entries.iter().enumerate() {
            check_index(field, pos, i, n)?;
            v[i] = Complex64::new(re, im);
        }
        Ok(v)
    };
    let mat = |field: &str, entries: &[Entry2]| -> Result<CMatrix> {
        let mut m = CMatrix::zeros(n, n);
        for (pos, &(i, j, re, im)) in entries.iter().enumerate() {
            check_index(field, pos, i, n)?;
            check_index(field, pos, j, n)?;
            m[(j, i)] = Complex64::new(re, im);
        }
        Ok(m)
    };
    FiniteHopfStarAlgebra::new(
        f.name,
        f.basis,
        mult,
        comult,
        vec1("unit", &f.unit)?,
        vec1("counit", &f.counit)?,
        mat("antipode", &f.antipode)?,
        mat("star", &f.star)?,
    )
}

pub fn load_algebra(path: &Path) -> Result<FiniteHopfStarAlgebra> {
    algebra_from_json(&std::fs::read_to_string(path)?)
}

pub fn save_algebra(a: &FiniteHopfStarAlgebra, path: &Path) -> Result<()> {
    std::fs::write(path, algebra_to_json(a))?;
    Ok(())
}

/// A group given by preset name (`z1`…`z6`, `s3`) or by an inline table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset(String),
    Inline(InlineGroup),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineGroup {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<CayleyTable> {
        match self {
            GroupSpec::Preset(name) => CayleyTable::preset(name),
            GroupSpec::Inline(g) => CayleyTable::new(g.labels.clone(), g.table.clone()),
        }
    }
}

/// Either a named action (see [`automorphism_preset`]) or one sparse matrix
/// `[[i, j, re, im], ...]` per group element, where `θ(e_i)` has
/// coefficient `re + i·im` on `e_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutomorphismSpec {
    Named(String),
    Explicit(Vec<Vec<Entry2>>),
}

impl AutomorphismSpec {
    pub fn resolve(&self, a: &FiniteHopfStarAlgebra, group: &CayleyTable) -> Result<Vec<CMatrix>> {
        match self {
            AutomorphismSpec::Named(name) => automorphism_preset(name, a, group),
            AutomorphismSpec::Explicit(mats) => {
                let n = a.dim();
                mats.iter()
                    .enumerate()
                    .map(|(k, entries)| {
                        let field = format!("automorphisms[{k}]");
                        let mut m = CMatrix::zeros(n, n);
                        for (pos, &(i, j, re, im)) in entries.iter().enumerate() {
                            check_index(&field, pos, i, n)?;
                            check_index(&field, pos, j, n)?;
                            m[(j, i)] = Complex64::new(re, im);
                        }
                        Ok(m)
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub format_version: u64,
    /// Preset name or path to an algebra file, relative to the spec file.
    pub algebra: String,
    pub group: GroupSpec,
    pub automorphisms: AutomorphismSpec,
}

pub fn action_spec_from_json(text: &str) -> Result<ActionSpec> {
    check_version(text)?;
    parse_typed(text)
}

/// Loads an action spec and rewrites a relative algebra path against the
/// spec's directory when that file exists.
pub fn load_action_spec(path: &Path) -> Result<ActionSpec> {
    let mut spec = action_spec_from_json(&std::fs::read_to_string(path)?)?;
    let candidate = path.parent().map(|d| d.join(&spec.algebra)).unwrap_or_else(|| PathBuf::from(&spec.algebra));
    if candidate.is_file() {
        spec.algebra = candidate.to_string_lossy().into_owned();
    }
    Ok(spec)
}

/// A standalone group file holds an inline group object.
pub fn load_group(path: &Path) -> Result<CayleyTable> {
    let g: InlineGroup = parse_typed(&std::fs::read_to_string(path)?)?;
    GroupSpec::Inline(g).resolve()
}

/// A standalone automorphism file holds the `automorphisms` value of an
/// action spec.
pub fn load_automorphisms(path: &Path) -> Result<AutomorphismSpec> {
    parse_typed(&std::fs::read_to_string(path)?)
}
