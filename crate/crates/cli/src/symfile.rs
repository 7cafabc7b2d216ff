//! JSON symmetry files.
//!
//! ```json
//! {
//!   "field": { "min_poly": ["1", "0", "1"], "q": ["0", "1"] },
//!   "dim": 2,
//!   "matrix": [[["0", "-1/2"], [], ...], ...],
//!   "basis": "lex-i-major",
//!   "label": "example"
//! }
//! ```
//!
//! Entry `(r, c)` of the `d² × d²` matrix is a coefficient sequence, constant
//! first. Basis vector `e_i ⊗ e_j` has index `i·d + j`.

use std::path::Path;

use hecke_core::heckesym::{check_hecke_symmetry, HeckeSymmetry};
use hecke_core::linalg::Matrix;
use hecke_core::{Error, Field, FieldSpec, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{input, HResult, HarnessError};

pub const BASIS: &str = "lex-i-major";

/// A rational written as `"p/q"`; plain JSON integers are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn to_rational(&self, at: &str) -> HResult<Rational> {
        match self {
            Num::Int(n) => Ok(Rational::from_int(*n)),
            Num::Text(t) => t.parse().map_err(|_| input(format!("{at}: invalid rational '{t}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldBlock {
    pub min_poly: Vec<Num>,
    pub q: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryFile {
    pub field: FieldBlock,
    pub dim: usize,
    pub matrix: Vec<Vec<Vec<Num>>>,
    #[serde(default = "default_basis")]
    pub basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn default_basis() -> String {
    BASIS.to_string()
}

fn coeffs(seq: &[Num], at: &str) -> HResult<Vec<Rational>> {
    seq.iter().enumerate().map(|(k, c)| c.to_rational(&format!("{at}[{k}]"))).collect()
}

pub fn scalar_text(s: &Scalar) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_text()).collect()
}

pub fn scalar_json(s: &Scalar) -> serde_json::Value {
    serde_json::Value::from(scalar_text(s))
}

fn nums(c: &[Rational]) -> Vec<Num> {
    c.iter().map(|r| Num::Text(r.to_text())).collect()
}

impl SymmetryFile {
    pub fn from_symmetry(r: &HeckeSymmetry) -> SymmetryFile {
        let n = r.d() * r.d();
        let m = r.matrix();
        SymmetryFile {
            field: FieldBlock { min_poly: nums(r.field().min_poly()), q: nums(r.q().coeffs()) },
            dim: r.d(),
            matrix: (0..n).map(|i| (0..n).map(|j| nums(m.get(i, j).coeffs())).collect()).collect(),
            basis: BASIS.to_string(),
            label: Some(r.label().to_string()),
        }
    }

    /// Builds and validates the symmetry; `fallback_label` is used when the file has none.
    pub fn to_symmetry(&self, fallback_label: &str) -> HResult<HeckeSymmetry> {
        if self.basis != BASIS {
            return Err(input(format!("basis: unsupported convention '{}' (expected {BASIS})", self.basis)));
        }
        let min_poly = coeffs(&self.field.min_poly, "field.min_poly")?;
        let field = Field::new(&min_poly).map_err(|e| input(format!("field.min_poly: {e}")))?;
        let q = field.reduce(&coeffs(&self.field.q, "field.q")?);
        let spec = FieldSpec::new(field.clone(), q);
        let n = self.dim * self.dim;
        if self.dim == 0 {
            return Err(input("dim: must be positive"));
        }
        if self.matrix.len() != n {
            return Err(input(format!("matrix: {} rows, expected {n}", self.matrix.len())));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(input(format!("matrix[{i}]: {} entries, expected {n}", row.len())));
            }
            let mut out = Vec::with_capacity(n);
            for (j, e) in row.iter().enumerate() {
                out.push(field.reduce(&coeffs(e, &format!("matrix[{i}][{j}]"))?));
            }
            rows.push(out);
        }
        let m = Matrix::from_dense(&field, &rows)?;
        let label = self.label.clone().unwrap_or_else(|| fallback_label.to_string());
        check_hecke_symmetry(self.dim, &spec, m, &label).map_err(|e| match e {
            Error::NotHeckeSymmetry { relation, row, col } => input(format!(
                "{label}: the {relation} relation fails; first nonzero defect entry at ({row}, {col})"
            )),
            other => input(format!("{label}: {other}")),
        })
    }
}

pub fn parse_symmetry(text: &str, fallback_label: &str) -> HResult<HeckeSymmetry> {
    let file: SymmetryFile = serde_json::from_str(text)
        .map_err(|e| input(format!("{fallback_label}: line {} column {}: {e}", e.line(), e.column())))?;
    file.to_symmetry(fallback_label)
}

pub fn load_symmetry(path: &Path) -> HResult<HeckeSymmetry> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_symmetry(&text, &stem).map_err(|e| match e {
        HarnessError::Input(m) => input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn symmetry_json(r: &HeckeSymmetry) -> String {
    let mut s = serde_json::to_string_pretty(&SymmetryFile::from_symmetry(r)).expect("serializable");
    s.push('\n');
    s
}

pub fn save_symmetry(r: &HeckeSymmetry, path: &Path) -> HResult<()> {
    std::fs::write(path, symmetry_json(r)).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}
