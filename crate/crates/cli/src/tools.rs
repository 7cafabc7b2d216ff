//! The calculator verbs: Hom dimensions, Mackey tables and Hilbert coefficients.

use hecke_core::hecke::{hom_dim_formula, hom_space, induced_module, mackey_restrict, BlockSign, OneDimRep};
use hecke_core::heckesym::homspace_relations;
use hecke_core::symcomb::Composition;
use serde_json::json;

use crate::config::{field_echo, resolve, CheckConfig, FieldChoice};
use crate::error::{input, HResult};
use crate::report::{CheckReport, Status};

/// `λ` or `λ:signs`, e.g. `2,1:t,a`; `t` is `T_i ↦ q` and `a` is `T_i ↦ -1`.
pub fn parse_rep(s: &str) -> HResult<OneDimRep> {
    let (comp, signs) = match s.split_once(':') {
        Some((c, g)) => (c, Some(g)),
        None => (s, None),
    };
    let lambda: Composition = comp.parse().map_err(|e| input(format!("'{s}': {e}")))?;
    let blocks = match signs {
        None => vec![BlockSign::Trivial; lambda.parts().len()],
        Some(g) => g
            .split(',')
            .map(|t| match t.trim() {
                "t" => Ok(BlockSign::Trivial),
                "a" => Ok(BlockSign::Alternating),
                other => Err(input(format!("'{s}': block sign '{other}' is not t or a"))),
            })
            .collect::<HResult<_>>()?,
    };
    OneDimRep::new(&lambda, &blocks).map_err(|e| input(format!("'{s}': {e}")))
}

/// `dim Hom(Ind ζ, Ind χ)` from the double-coset count and from the intertwiner solve.
pub fn homdim_report(zeta: &str, chi: &str, field: &FieldChoice) -> HResult<CheckReport> {
    let spec = field.resolve()?;
    let (z, c) = (parse_rep(zeta)?, parse_rep(chi)?);
    if z.lambda().n() != c.lambda().n() {
        return Err(input(format!("{zeta} and {chi} have different sizes")));
    }
    let formula = hom_dim_formula(&z, &c, &spec)?;
    let reverse = hom_dim_formula(&c, &z, &spec)?;
    let mz = induced_module(&z, &spec)?.module;
    let mc = induced_module(&c, &spec)?.module;
    let solved = hom_space(&mc, &mz)?.dim();
    let mut report = CheckReport::new(json!({ "zeta": z.to_string(), "chi": c.to_string(), "field": field_echo(&spec) }));
    report.results.insert(
        "homdim".into(),
        json!({
            "formula": formula,
            "intertwiners": solved,
            "reverse_formula": reverse,
            "status": Status::from_bool(formula == solved && reverse == formula).json(),
        }),
    );
    Ok(report)
}

/// Summands of `Ind χ` restricted to `H_μ`.
pub fn mackey_report(chi: &str, mu: &str, field: &FieldChoice) -> HResult<CheckReport> {
    let spec = field.resolve()?;
    let c = parse_rep(chi)?;
    let mu: Composition = mu.parse().map_err(|e| input(format!("'{mu}': {e}")))?;
    if mu.n() != c.lambda().n() {
        return Err(input(format!("{mu} and {c} have different sizes")));
    }
    let m = induced_module(&c, &spec)?;
    let blocks = mackey_restrict(&m, &mu)?;
    let total: usize = blocks.iter().map(|b| b.basis.len()).sum();
    // each summand is induced from H_ν up to H_μ
    let sizes_ok = blocks.iter().all(|b| b.basis.len() * b.nu.young_order() == mu.young_order());
    let rows: Vec<_> = blocks
        .iter()
        .map(|b| {
            json!({
                "rep": b.rep.to_string(),
                "nu": b.nu.to_string(),
                "chi_pi": b.chi_pi.to_string(),
                "dim": b.basis.len(),
            })
        })
        .collect();
    let mut report = CheckReport::new(json!({ "chi": c.to_string(), "mu": mu.to_string(), "field": field_echo(&spec) }));
    report.results.insert(
        "mackey".into(),
        json!({
            "blocks": rows,
            "module_dim": m.basis.len(),
            "status": Status::from_bool(total == m.basis.len() && sizes_ok).json(),
        }),
    );
    Ok(report)
}

/// Hilbert coefficients of `S` and `Λ` for each symmetry, and of `A`, `E` for a pair.
pub fn dims_report(cfg: &CheckConfig) -> HResult<CheckReport> {
    let res = resolve(cfg)?;
    let n = cfg.nmax;
    let mut items = Vec::new();
    for r in &res.symmetries {
        let s = r.sym_algebra()?;
        let l = r.ext_algebra()?;
        items.push(json!({
            "symmetry": r.label(),
            "sym": s.component_dims(n)?,
            "ext": l.component_dims(n)?,
            "sym_dual": s.quadratic_dual()?.component_dims(n)?,
            "ext_dual": l.quadratic_dual()?.component_dims(n)?,
        }));
    }
    let mut report = CheckReport::new(res.config_echo.clone());
    let mut v = json!({ "symmetries": items });
    if let [rp, r, ..] = &res.symmetries[..] {
        let pair = homspace_relations(rp, r)?;
        v["pair"] = json!({
            "pair": [rp.label(), r.label()],
            "a": pair.a.component_dims(n)?,
            "e": pair.e.component_dims(n)?,
        });
    }
    report.results.insert("dims".into(), v);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(q: &str) -> FieldChoice {
        FieldChoice { field: Some("rational".into()), q: Some(q.into()) }
    }

    #[test]
    fn rep_parsing() {
        assert_eq!(parse_rep("2,1:a,t").unwrap().to_string(), parse_rep("2,1:a,a").unwrap().to_string());
        assert!(parse_rep("2,1:x,t").is_err());
        assert!(parse_rep("2,1:t").is_err());
        assert!(parse_rep("0,2").is_err());
    }

    #[test]
    fn homdim_matches_solve() {
        let r = homdim_report("2,1", "1,2", &rational("2")).unwrap();
        assert!(r.passed());
        // trivial and sign characters of the full group only meet through the identity coset
        let r = homdim_report("3:t", "3:a", &rational("2")).unwrap();
        assert_eq!(r.results["homdim"]["formula"], json!(0));
        assert!(homdim_report("2", "3", &rational("2")).is_err());
    }

    #[test]
    fn mackey_blocks_partition_the_basis() {
        let r = mackey_report("2,1:a,t", "1,2", &rational("3")).unwrap();
        assert!(r.passed());
        assert_eq!(r.results["mackey"]["module_dim"], json!(3));
    }
}
