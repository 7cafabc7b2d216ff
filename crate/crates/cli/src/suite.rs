use std::time::Instant;

use hecke_core::hecke::{
    check_zero_hecke, hom_dim_formula, hom_space, homotopy_check, induced_module, module_complex,
    trivial_source_quotient, zero_hecke_gr_action, OneDimRep, SubspaceChoice,
};
use hecke_core::heckesym::{
    cotensor_dim_check, dual_pair_check, hom_identification_check, homspace_relations, pair_annihilator_inclusion,
    summands_covered, transform_report, HeckeSymmetry,
};
use hecke_core::linalg::homology_dims;
use hecke_core::quadratic::{hilbert_duality_check, FrobeniusStatus, QuadraticAlgebra};
use hecke_core::symcomb::{all_compositions, Composition};
use hecke_core::FieldSpec;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{resolve, Check, CheckConfig, Resolved};
use crate::error::{HResult, HarnessError};
use crate::report::{CheckReport, Status};

/// Largest `n` used by the Hecke-module battery.
pub const HECKE_SUITE_MAX: usize = 4;

/// Caps the number of failure witnesses listed per item.
const MAX_WITNESSES: usize = 8;

type CheckResult = HResult<Value>;

fn with_status(mut v: Value, s: Status) -> Value {
    v["status"] = s.json();
    v
}

fn status_of(v: &Value) -> Status {
    match v.get("status").and_then(Value::as_str) {
        Some("fail") => Status::Fail,
        Some("hypothesis-not-met") => Status::HypothesisNotMet,
        _ => Status::Pass,
    }
}

fn items_result(items: Vec<Value>) -> Value {
    let s = Status::combine(items.iter().map(status_of));
    with_status(json!({ "items": items }), s)
}

/// Maps `f` over `0..count`, in parallel, keeping index order.
fn par_indexed<T: Send>(count: usize, f: impl Fn(usize) -> HResult<T> + Sync + Send) -> HResult<Vec<T>> {
    (0..count).into_par_iter().map(f).collect()
}

fn algebras(r: &HeckeSymmetry) -> HResult<[(String, QuadraticAlgebra); 2]> {
    Ok([
        (format!("S({})", r.label()), r.sym_algebra()?),
        (format!("Λ({})", r.label()), r.ext_algebra()?),
    ])
}

fn relations(r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let t = transform_report(r, nmax)?;
    let v = json!({
        "symmetry": r.label(),
        "dim": r.d(),
        "sym_relations_dim": r.sym_algebra()?.relations().dim(),
        "ext_relations_dim": r.ext_algebra()?.relations().dim(),
        "hecke_and_braid": true,
        "transforms": {
            "op_sym_dims_equal": t.op_sym_dims_equal,
            "star_sym_is_ext_dual": t.star_sym_is_ext_dual,
            "tilde_sym_is_ext": t.tilde_sym_is_ext,
            "tilde_is_scaled_inverse": t.tilde_is_scaled_inverse,
            "inverse_valid": t.inverse_valid,
        },
    });
    Ok(with_status(v, Status::from_bool(t.holds())))
}

fn koszul(r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let mut items = Vec::new();
    for (name, a) in algebras(r)? {
        let homology = par_indexed(nmax.saturating_sub(1), |k| Ok(a.koszul_homology(k + 2)?))?;
        let failure = homology.iter().position(|h| h.iter().any(|&x| x != 0));
        let mut v = json!({
            "algebra": name,
            "dims": a.component_dims(nmax)?,
            "homology": homology.iter().enumerate().map(|(k, h)| json!({ "degree": k + 2, "dims": h })).collect::<Vec<_>>(),
        });
        if let Some(k) = failure {
            v["witness"] = json!({ "degree": k + 2, "homology": homology[k] });
        }
        items.push(with_status(v, Status::from_bool(failure.is_none())));
    }
    let s = Status::combine(items.iter().map(status_of));
    Ok(with_status(json!({ "symmetry": r.label(), "algebras": items }), s))
}

fn hilbert_duality(r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let sd = r.sym_algebra()?.component_dims(nmax)?;
    let ld = r.ext_algebra()?.component_dims(nmax)?;
    let d = hilbert_duality_check(&sd, &ld, nmax)?;
    let mut v = json!({
        "symmetry": r.label(),
        "sym_dims": sd,
        "ext_dims": ld,
        "convolution": d.convolution,
    });
    if let Some(n) = d.first_failure {
        v["witness"] = json!({ "degree": n, "coefficient": d.convolution[n] });
    }
    Ok(with_status(v, Status::from_bool(d.holds)))
}

fn frobenius(r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let l = r.ext_algebra()?;
    let dims = l.component_dims(nmax + 1)?;
    let top = (0..=nmax).find(|&n| dims[n] != 0 && dims[n + 1] == 0);
    let mut v = json!({ "algebra": format!("Λ({})", r.label()), "dims": dims });
    let Some(top) = top else {
        v["reason"] = json!(format!("Λ does not vanish by degree {}", nmax + 1));
        return Ok(with_status(v, Status::HypothesisNotMet));
    };
    let rep = l.frobenius_check(top)?;
    v["top_degree"] = json!(top);
    v["pairings"] = json!(rep
        .pairings
        .iter()
        .enumerate()
        .map(|(k, (a, b, rank))| json!({ "k": k, "left": a, "right": b, "rank": rank }))
        .collect::<Vec<_>>());
    let status = match rep.status {
        FrobeniusStatus::Frobenius => Status::Pass,
        FrobeniusStatus::Degenerate => {
            let k = rep.pairings.iter().position(|(a, b, rank)| a != b || rank != a).unwrap_or(0);
            v["witness"] = json!({ "degree": k, "pairing": rep.pairings[k] });
            Status::Fail
        }
        FrobeniusStatus::HypothesisFails => {
            v["reason"] = json!(format!("dim Λ_{top} = {} ≠ 1", dims[top]));
            Status::HypothesisNotMet
        }
    };
    Ok(with_status(v, status))
}

fn homotopy(r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let rows = par_indexed(nmax, |k| {
        let t = r.tensor_representation(k + 1)?;
        Ok(homotopy_check(&t)?)
    })?;
    let failure = rows.iter().position(|ok| !ok.iter().all(|&b| b));
    let mut v = json!({
        "symmetry": r.label(),
        "degrees": rows.iter().enumerate().map(|(k, ok)| json!({ "n": k + 1, "identity_holds": ok })).collect::<Vec<_>>(),
    });
    if let Some(k) = failure {
        let i = rows[k].iter().position(|&b| !b).unwrap_or(0);
        v["witness"] = json!({ "n": k + 1, "i": i });
    }
    Ok(with_status(v, Status::from_bool(failure.is_none())))
}

fn annihilator_inclusion(r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let l = r.ext_algebra()?;
    let reps = par_indexed(nmax.saturating_sub(1), |k| Ok(l.annihilator_inclusion(r.matrix(), r.spec(), k + 2)?))?;
    let failure = reps.iter().find(|rep| !rep.holds());
    let mut v = json!({
        "algebra": format!("Λ({})", r.label()),
        "degrees": reps.iter().map(|rep| json!({
            "n": rep.n,
            "steps": rep.steps.iter().map(|(k, dim, ok)| json!({ "k": k, "dim": dim, "holds": ok })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    if let Some(rep) = failure {
        let k = rep.steps.iter().find(|s| !s.2).map(|s| s.0).unwrap_or(0);
        v["witness"] = json!({ "n": rep.n, "k": k });
    }
    Ok(with_status(v, Status::from_bool(failure.is_none())))
}

fn pair_annihilator(rp: &HeckeSymmetry, r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let reps = par_indexed(nmax.saturating_sub(1), |k| Ok(pair_annihilator_inclusion(rp, r, k + 2)?))?;
    let failure = reps.iter().find(|rep| !rep.holds());
    let mut v = json!({
        "algebra": format!("E({}, {})", rp.label(), r.label()),
        "degrees": reps.iter().map(|rep| json!({
            "n": rep.n,
            "steps": rep.steps.iter().map(|(k, dim, ok)| json!({ "k": k, "dim": dim, "holds": ok })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    if let Some(rep) = failure {
        let k = rep.steps.iter().find(|s| !s.2).map(|s| s.0).unwrap_or(0);
        v["witness"] = json!({ "n": rep.n, "k": k });
    }
    Ok(with_status(v, Status::from_bool(failure.is_none())))
}

fn hom_identification(rp: &HeckeSymmetry, r: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let rows = par_indexed(nmax + 1, |n| Ok(hom_identification_check(rp, r, n)?))?;
    let dual = dual_pair_check(rp, r)?;
    let pair = homspace_relations(rp, r)?;
    let a_dims = pair.a.component_dims(nmax)?;
    let e_dims = pair.e.component_dims(nmax)?;
    let duality = hilbert_duality_check(&a_dims, &e_dims, nmax)?;
    let failure = rows.iter().find(|c| !c.holds());
    let dual_ok = dual.a_dual_is_e && dual.e_dual_is_a && dual.tilde_swap != Some(false);
    let mut v = json!({
        "pair": [rp.label(), r.label()],
        "a_dims": a_dims,
        "e_dims": e_dims,
        "degrees": rows.iter().map(|c| json!({
            "n": c.n,
            "a_dim": c.a_dim,
            "hom_to_prime": c.hom_to_prime,
            "upsilon_dim": c.upsilon_dim,
            "hom_from_prime": c.hom_from_prime,
            "a_subspace_equal": c.a_subspace_equal,
            "upsilon_subspace_equal": c.upsilon_subspace_equal,
        })).collect::<Vec<_>>(),
        "dual_pair": {
            "a_dual_is_e": dual.a_dual_is_e,
            "e_dual_is_a": dual.e_dual_is_a,
            "tilde_swap": dual.tilde_swap,
        },
        "a_e_duality": { "holds": duality.holds, "convolution": duality.convolution },
    });
    if let Some(c) = failure {
        v["witness"] = json!({ "degree": c.n });
    } else if let Some(n) = duality.first_failure {
        v["witness"] = json!({ "degree": n, "duality_coefficient": duality.convolution[n] });
    }
    Ok(with_status(v, Status::from_bool(failure.is_none() && dual_ok && duality.holds)))
}

fn cotensor(rp: &HeckeSymmetry, r: &HeckeSymmetry, rpp: &HeckeSymmetry, nmax: usize) -> CheckResult {
    let rows = par_indexed(nmax + 1, |n| {
        let c = cotensor_dim_check(rp, r, rpp, n)?;
        // the hypothesis is only examined where the dimensions disagree
        let covered = if c.equal() { None } else { Some(summands_covered(rp, r, n)?) };
        Ok((c, covered))
    })?;
    let failure = rows.iter().find(|(c, covered)| !c.equal() && *covered == Some(true));
    let unmet = rows.iter().find(|(_, covered)| *covered == Some(false));
    let mut v = json!({
        "triple": [rp.label(), r.label(), rpp.label()],
        "degrees": rows.iter().map(|(c, covered)| json!({
            "n": c.n,
            "tensor_dim": c.tensor_dim,
            "a_dim": c.a_dim,
            "summands_covered": covered,
        })).collect::<Vec<_>>(),
        "hypothesis": "every summand of T_n(V') is isomorphic to a summand of T_n(V)",
    });
    let status = if let Some((c, _)) = failure {
        v["witness"] = json!({ "degree": c.n, "tensor_dim": c.tensor_dim, "a_dim": c.a_dim });
        Status::Fail
    } else if let Some((c, _)) = unmet {
        v["witness"] = json!({ "degree": c.n, "tensor_dim": c.tensor_dim, "a_dim": c.a_dim });
        Status::HypothesisNotMet
    } else {
        Status::Pass
    };
    Ok(with_status(v, status))
}

fn all_reps(n: usize) -> Vec<OneDimRep> {
    all_compositions(n).iter().flat_map(OneDimRep::all).collect()
}

/// Witness-capped tally of one battery item.
struct Tally {
    count: usize,
    failures: Vec<Value>,
}

impl Tally {
    fn new() -> Tally {
        Tally { count: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.count += 1;
        if !ok && self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness());
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.count += o.count;
        for f in o.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(f);
            }
        }
        self
    }

    fn json(&self, what: &str) -> Value {
        with_status(json!({ what: self.count, "failures": self.failures }), Status::from_bool(self.failures.is_empty()))
    }
}

fn hom_dimensions(n: usize, spec: &FieldSpec) -> HResult<Tally> {
    let reps = all_reps(n);
    let mods = reps.iter().map(|c| Ok(induced_module(c, spec)?.module)).collect::<HResult<Vec<_>>>()?;
    let mut t = Tally::new();
    for (a, za) in reps.iter().enumerate() {
        for (b, cb) in reps.iter().enumerate() {
            let formula = hom_dim_formula(za, cb, spec)?;
            let solved = hom_space(&mods[b], &mods[a])?.dim();
            let back = hom_dim_formula(cb, za, spec)?;
            t.record(formula == solved && back == formula, || {
                json!({ "zeta": za.to_string(), "chi": cb.to_string(), "formula": formula, "solved": solved, "reverse": back })
            });
        }
    }
    Ok(t)
}

fn zero_hecke(n: usize, spec: &FieldSpec) -> HResult<Tally> {
    let reps = all_reps(n);
    let mut t = Tally::new();
    for chi in &reps {
        for chp in &reps {
            let g = zero_hecke_gr_action(chi, chp, spec)?;
            let res = check_zero_hecke(&g);
            t.record(res.is_ok(), || {
                json!({ "chi": chi.to_string(), "chi_prime": chp.to_string(), "error": res.unwrap_err().to_string() })
            });
        }
    }
    Ok(t)
}

fn exactness(n: usize, spec: &FieldSpec) -> HResult<Tally> {
    let mut t = Tally::new();
    for chi in all_reps(n) {
        let m = induced_module(&chi, spec)?.module;
        for choice in SubspaceChoice::ALL {
            let h = homology_dims(&module_complex(&m, choice)?)?;
            t.record(h.iter().skip(1).all(|&x| x == 0), || {
                json!({ "chi": chi.to_string(), "choice": choice.name(), "homology": h })
            });
        }
    }
    Ok(t)
}

fn trivial_source(n: usize, spec: &FieldSpec) -> HResult<Tally> {
    let comps = all_compositions(n);
    let mut t = Tally::new();
    for lam in &comps {
        for mu in &comps {
            let r = trivial_source_quotient(lam, mu, spec)?;
            t.record(r.quotient_dim == r.trivial_intersection_count && r.preimage_equal, || {
                json!({
                    "lambda": lam.to_string(),
                    "mu": mu.to_string(),
                    "quotient_dim": r.quotient_dim,
                    "trivial_intersections": r.trivial_intersection_count,
                    "preimage_equal": r.preimage_equal,
                })
            });
        }
    }
    Ok(t)
}

fn regular_homotopy(n: usize, spec: &FieldSpec) -> HResult<Tally> {
    let ones = Composition::new(&vec![1; n])?;
    let m = induced_module(&OneDimRep::trivial(&ones), spec)?.module;
    let ok = homotopy_check(&m)?;
    let mut t = Tally::new();
    t.record(ok.iter().all(|&b| b), || json!({ "n": n, "identity_holds": ok }));
    Ok(t)
}

fn hecke_suite(spec: &FieldSpec, nmax: usize) -> CheckResult {
    let top = nmax.clamp(1, HECKE_SUITE_MAX);
    type Item = fn(usize, &FieldSpec) -> HResult<Tally>;
    let items: [(&str, &str, Item); 5] = [
        ("hom_dimension", "pairs", hom_dimensions),
        ("graded_zero_hecke", "actions", zero_hecke),
        ("module_exactness", "complexes", exactness),
        ("trivial_source_quotient", "pairs", trivial_source),
        ("regular_homotopy", "modules", regular_homotopy),
    ];
    let tallies = par_indexed(items.len() * top, |k| (items[k / top].2)(k % top + 1, spec))?;
    let mut v = json!({ "n_max": top });
    let mut statuses = Vec::new();
    let mut rest = tallies.into_iter();
    for (name, what, _) in &items {
        let t = rest.by_ref().take(top).fold(Tally::new(), Tally::merge);
        let j = t.json(what);
        statuses.push(status_of(&j));
        v[*name] = j;
    }
    Ok(with_status(v, Status::combine(statuses)))
}

fn per_symmetry(res: &Resolved, f: impl Fn(&HeckeSymmetry) -> CheckResult + Sync + Send) -> CheckResult {
    let items = res.symmetries.par_iter().map(f).collect::<HResult<Vec<_>>>()?;
    Ok(items_result(items))
}

fn run_check(check: Check, res: &Resolved, nmax: usize) -> CheckResult {
    let syms = &res.symmetries;
    let first = &syms[0];
    let second = syms.get(1).unwrap_or(first);
    let third = syms.get(2).unwrap_or(first);
    match check {
        Check::Relations => per_symmetry(res, |r| relations(r, nmax)),
        Check::Koszul => per_symmetry(res, |r| koszul(r, nmax)),
        Check::HilbertDuality => per_symmetry(res, |r| hilbert_duality(r, nmax)),
        Check::Frobenius => per_symmetry(res, |r| frobenius(r, nmax)),
        Check::Homotopy => per_symmetry(res, |r| homotopy(r, nmax)),
        Check::AnnihilatorInclusion => {
            let mut items = res.symmetries.par_iter().map(|r| annihilator_inclusion(r, nmax)).collect::<HResult<Vec<_>>>()?;
            if syms.len() >= 2 {
                items.push(pair_annihilator(first, second, nmax)?);
            }
            Ok(items_result(items))
        }
        Check::HomIdentification => hom_identification(first, second, nmax),
        Check::Cotensor => cotensor(first, second, third, nmax),
        Check::HeckeSuite => hecke_suite(&res.spec, nmax),
    }
}

/// Runs the selected checks; `jobs` threads share the independent degree-level work.
pub fn run_suite(cfg: &CheckConfig) -> HResult<CheckReport> {
    let start = Instant::now();
    let res = resolve(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| HarnessError::Io(format!("thread pool: {e}")))?;
    let outcomes: Vec<(CheckResult, f64)> = pool.install(|| {
        cfg.checks
            .par_iter()
            .map(|&c| {
                let t = Instant::now();
                let r = run_check(c, &res, cfg.nmax);
                (r, t.elapsed().as_secs_f64())
            })
            .collect()
    });
    let mut report = CheckReport::new(res.config_echo.clone());
    let mut timing = serde_json::Map::new();
    for (&c, (r, secs)) in cfg.checks.iter().zip(outcomes) {
        report.results.insert(c.name().to_string(), r?);
        timing.insert(c.name().to_string(), json!(round_ms(secs)));
    }
    if cfg.timing {
        report.timing = json!({
            "checks_seconds": timing,
            "total_seconds": round_ms(start.elapsed().as_secs_f64()),
            "jobs": cfg.jobs,
        });
    }
    Ok(report)
}

fn round_ms(s: f64) -> f64 {
    (s * 1000.0).round() / 1000.0
}
