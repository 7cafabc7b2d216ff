use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hecke_core::heckesym::{builtin_symmetry, Builtin, HeckeSymmetry};
use hecke_core::scalars::parse_poly;
use hecke_core::{Field, FieldSpec, Rational};
use serde_json::{json, Value};

use crate::error::{input, HResult};
use crate::symfile::{load_symmetry, scalar_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Relations,
    Koszul,
    HilbertDuality,
    Frobenius,
    Homotopy,
    HomIdentification,
    Cotensor,
    AnnihilatorInclusion,
    HeckeSuite,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Relations,
        Check::Koszul,
        Check::HilbertDuality,
        Check::Frobenius,
        Check::Homotopy,
        Check::HomIdentification,
        Check::Cotensor,
        Check::AnnihilatorInclusion,
        Check::HeckeSuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Relations => "relations",
            Check::Koszul => "koszul",
            Check::HilbertDuality => "hilbert-duality",
            Check::Frobenius => "frobenius",
            Check::Homotopy => "homotopy",
            Check::HomIdentification => "hom-identification",
            Check::Cotensor => "cotensor",
            Check::AnnihilatorInclusion => "annihilator-inclusion",
            Check::HeckeSuite => "hecke-suite",
        }
    }

    /// Checks built on Koszul-type complexes, which need `N ≥ 2`.
    pub fn needs_complex(self) -> bool {
        matches!(
            self,
            Check::Koszul | Check::HilbertDuality | Check::Frobenius | Check::Homotopy | Check::AnnihilatorInclusion
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Check, String> {
        let s = s.trim();
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check '{s}' (expected one of {})", names.join(", "))
            })
    }
}

/// `none` or an empty string selects no checks.
pub fn parse_checks(s: &str) -> HResult<Vec<Check>> {
    let s = s.trim();
    if s.is_empty() || s == "none" {
        return Ok(Vec::new());
    }
    let mut out: Vec<Check> = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let c = part.parse::<Check>().map_err(input)?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

pub fn default_checks(symmetries: usize) -> Vec<Check> {
    let mut out = vec![
        Check::Relations,
        Check::Koszul,
        Check::HilbertDuality,
        Check::Frobenius,
        Check::Homotopy,
        Check::AnnihilatorInclusion,
    ];
    if symmetries >= 2 {
        out.push(Check::HomIdentification);
    }
    if symmetries >= 3 {
        out.push(Check::Cotensor);
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetrySource {
    Builtin(Builtin),
    File(PathBuf),
}

impl SymmetrySource {
    /// A builtin name, or otherwise a path to a symmetry file.
    pub fn parse(s: &str) -> SymmetrySource {
        match s.parse::<Builtin>() {
            Ok(b) => SymmetrySource::Builtin(b),
            Err(_) => SymmetrySource::File(PathBuf::from(s)),
        }
    }

    fn echo(&self) -> Value {
        match self {
            SymmetrySource::Builtin(b) => json!({ "builtin": b.to_string() }),
            SymmetrySource::File(p) => json!({ "file": p.display().to_string() }),
        }
    }
}

/// Field presets: `rational`, `gaussian`, `cube-root`, or a monic minimal
/// polynomial as comma-separated coefficients, constant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldChoice {
    pub field: Option<String>,
    pub q: Option<String>,
}

impl FieldChoice {
    pub fn is_explicit(&self) -> bool {
        self.field.is_some() || self.q.is_some()
    }

    pub fn resolve(&self) -> HResult<FieldSpec> {
        let name = self.field.as_deref().unwrap_or("rational").trim();
        let (field, default_q): (Field, Vec<Rational>) = match name {
            "rational" | "Q" => (Field::rationals(), vec![Rational::from_int(2)]),
            "gaussian" | "Q(i)" => {
                let s = FieldSpec::gaussian();
                (s.field().clone(), s.q().coeffs().to_vec())
            }
            "cube-root" | "Q(w)" => {
                let s = FieldSpec::cube_root();
                (s.field().clone(), s.q().coeffs().to_vec())
            }
            other => {
                let coeffs = parse_poly(other).map_err(|e| input(format!("--field: {e}")))?;
                let field = Field::new(&coeffs).map_err(|e| input(format!("--field: {e}")))?;
                let gen = if field.degree() > 1 {
                    vec![Rational::ZERO, Rational::ONE]
                } else {
                    vec![Rational::from_int(2)]
                };
                (field, gen)
            }
        };
        let q = match &self.q {
            Some(text) => field.parse_scalar(text).map_err(|e| input(format!("--q: {e}")))?,
            None => field.reduce(&default_q),
        };
        Ok(FieldSpec::new(field, q))
    }
}

/// Everything a `verify` run depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub symmetries: Vec<SymmetrySource>,
    pub field: FieldChoice,
    pub nmax: usize,
    pub checks: Vec<Check>,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub timing: bool,
}

impl CheckConfig {
    pub fn new(symmetries: Vec<SymmetrySource>, nmax: usize, checks: Vec<Check>) -> CheckConfig {
        CheckConfig {
            symmetries,
            field: FieldChoice { field: None, q: None },
            nmax,
            checks,
            out: None,
            jobs: 1,
            timing: true,
        }
    }

    pub fn validate(&self) -> HResult<()> {
        if self.symmetries.is_empty() {
            return Err(input("at least one symmetry is required"));
        }
        if self.symmetries.len() > 3 {
            return Err(input("at most three symmetries"));
        }
        if let Some(c) = self.checks.iter().find(|c| c.needs_complex()) {
            if self.nmax < 2 {
                return Err(input(format!("check {c} needs --nmax ≥ 2")));
            }
        }
        if self.jobs == 0 {
            return Err(input("--jobs must be positive"));
        }
        Ok(())
    }
}

/// Parsed symmetries over one common field.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub spec: FieldSpec,
    pub symmetries: Vec<HeckeSymmetry>,
    pub config_echo: Value,
}

pub fn field_echo(spec: &FieldSpec) -> Value {
    json!({
        "min_poly": spec.field().min_poly().iter().map(|r| r.to_text()).collect::<Vec<_>>(),
        "q": scalar_json(spec.q()),
    })
}

/// Loads files, fixes the field and builds builtins in it.
pub fn resolve(cfg: &CheckConfig) -> HResult<Resolved> {
    cfg.validate()?;
    let mut loaded: Vec<Option<HeckeSymmetry>> = Vec::with_capacity(cfg.symmetries.len());
    for s in &cfg.symmetries {
        loaded.push(match s {
            SymmetrySource::File(p) => Some(load_symmetry(p)?),
            SymmetrySource::Builtin(_) => None,
        });
    }
    let spec = if cfg.field.is_explicit() {
        cfg.field.resolve()?
    } else if let Some(first) = loaded.iter().flatten().next() {
        first.spec().clone()
    } else {
        cfg.field.resolve()?
    };
    let mut symmetries = Vec::with_capacity(loaded.len());
    for (src, l) in cfg.symmetries.iter().zip(loaded) {
        let sym = match (src, l) {
            (SymmetrySource::Builtin(b), _) => builtin_symmetry(*b, &spec).map_err(|e| input(format!("{b}: {e}")))?,
            (SymmetrySource::File(p), Some(sym)) => {
                if sym.spec() != &spec {
                    return Err(input(format!("{}: field or q differs from the run's field", p.display())));
                }
                sym
            }
            (SymmetrySource::File(_), None) => unreachable!("files are loaded above"),
        };
        symmetries.push(sym);
    }
    let config_echo = json!({
        "symmetries": cfg.symmetries.iter().zip(&symmetries).map(|(src, s)| {
            let mut v = src.echo();
            v["label"] = json!(s.label());
            v["dim"] = json!(s.d());
            v
        }).collect::<Vec<_>>(),
        "field": field_echo(&spec),
        "nmax": cfg.nmax,
        "checks": cfg.checks.iter().map(|c| c.name()).collect::<Vec<_>>(),
    });
    Ok(Resolved { spec, symmetries, config_echo })
}
