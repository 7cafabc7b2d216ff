use hecke_cli::config::{parse_checks, FieldChoice};
use hecke_cli::{run_suite, CheckConfig, Status, SymmetrySource};

fn config(jobs: usize) -> CheckConfig {
    let syms = ["drinfeld_jimbo(2)", "drinfeld_jimbo(3)", "drinfeld_jimbo(2)"].map(SymmetrySource::parse).to_vec();
    let mut cfg = CheckConfig::new(syms, 3, parse_checks("relations,koszul,hilbert-duality,hom-identification,cotensor").unwrap());
    cfg.field = FieldChoice { field: Some("gaussian".into()), q: None };
    cfg.jobs = jobs;
    cfg
}

#[test]
fn canonical_section_ignores_thread_count() {
    let a = run_suite(&config(1)).unwrap();
    let b = run_suite(&config(1)).unwrap();
    let c = run_suite(&config(3)).unwrap();
    assert_eq!(a.canonical(), b.canonical());
    assert_eq!(a.canonical(), c.canonical());
    assert!(a.passed(), "{:?}", a.failed_checks());
    assert_eq!(a.status_of("cotensor"), Some("pass"));
}

#[test]
fn config_is_echoed_in_fixed_order() {
    let r = run_suite(&config(2)).unwrap();
    let checks: Vec<&str> = r.config["checks"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(checks, ["relations", "koszul", "hilbert-duality", "hom-identification", "cotensor"]);
    assert_eq!(r.config["field"]["q"], serde_json::json!(["0", "1"]));
    assert_eq!(r.config["nmax"], 3);
}

#[test]
fn complex_checks_need_degree_two() {
    let mut cfg = config(1);
    cfg.nmax = 1;
    assert!(run_suite(&cfg).is_err());
    cfg.checks = parse_checks("relations,hecke-suite").unwrap();
    let r = run_suite(&cfg).unwrap();
    assert_eq!(r.status_of("hecke-suite"), Some("pass"));
    assert_eq!(Status::combine([Status::Pass]), Status::Pass);
}
