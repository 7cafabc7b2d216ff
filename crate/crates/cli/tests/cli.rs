use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hecke_cli::{load_symmetry, save_symmetry};
use hecke_core::heckesym::hietarinta;
use hecke_core::FieldSpec;
use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn counterexample_fails_hilbert_duality() {
    let out = hecke(&["verify", "--symmetry", "hietarinta_counterexample", "--field", "gaussian", "--checks", "hilbert-duality"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    let item = &r["results"]["hilbert-duality"]["items"][0];
    assert_eq!(item["status"], "fail");
    assert_eq!(item["sym_dims"], serde_json::json!([1, 2, 2, 0, 0]));
    assert_eq!(item["ext_dims"], serde_json::json!([1, 2, 2, 0, 0]));
    assert_eq!(item["witness"]["degree"], 4);
    assert_eq!(r["results"]["hilbert-duality"]["status"], "fail");
}

#[test]
fn quantum_plane_passes_and_is_frobenius_in_degree_two() {
    let out = hecke(&[
        "verify",
        "--symmetry",
        "drinfeld_jimbo(2)",
        "--q",
        "2",
        "--nmax",
        "5",
        "--checks",
        "koszul,hilbert-duality,frobenius",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    for c in ["koszul", "hilbert-duality", "frobenius"] {
        assert_eq!(r["results"][c]["status"], "pass", "{c}");
    }
    assert_eq!(r["results"]["frobenius"]["items"][0]["top_degree"], 2);
}

#[test]
fn root_of_unity_koszul_passes() {
    let out = hecke(&["verify", "--symmetry", "drinfeld_jimbo(2)", "--field", "cube-root", "--checks", "koszul", "--nmax", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["koszul"]["status"], "pass");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..3).map(|k| dir.path().join(format!("r{k}.json"))).collect();
    for (k, p) in paths.iter().enumerate() {
        let jobs = if k == 2 { "4" } else { "1" };
        let out = hecke(&[
            "verify",
            "--symmetry",
            "drinfeld_jimbo(2)",
            "--symmetry2",
            "drinfeld_jimbo(2)",
            "--checks",
            "relations,koszul,homotopy,hom-identification,hecke-suite",
            "--nmax",
            "3",
            "--jobs",
            jobs,
            "--no-timing",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let bytes: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    assert_eq!(bytes[0], bytes[1]);
    assert_eq!(bytes[0], bytes[2]);
    assert!(bytes[0].ends_with(b"}\n"));
}

#[test]
fn timing_lives_outside_the_canonical_section() {
    let args = ["verify", "--symmetry", "drinfeld_jimbo(2)", "--checks", "koszul"];
    let a = report(&hecke(&args));
    let b = report(&hecke(&args));
    assert_eq!(a["config"], b["config"]);
    assert_eq!(a["results"], b["results"]);
    assert!(a["timing"]["total_seconds"].is_number());
    let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["config", "results", "timing"]);
}

#[test]
fn input_errors_exit_with_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--symmetry", "drinfeld_jimbo(2)", "--checks", "nonsense"],
        vec!["verify", "--symmetry", "/no/such/file.json"],
        vec!["verify", "--symmetry", "drinfeld_jimbo(2)", "--checks", "koszul", "--nmax", "1"],
        vec!["verify", "--symmetry", "super(1,1)", "--q", "2"],
        vec!["verify", "--symmetry", "hietarinta_counterexample", "--q", "2"],
        vec!["verify", "--symmetry", "drinfeld_jimbo(2)", "--q", "0"],
        vec!["verify", "--symmetry", "drinfeld_jimbo(2)", "--out", "/no/such/dir/report.json"],
        vec!["verify", "--bogus-flag"],
        vec!["homdim", "--zeta", "2,1", "--chi", "3,1"],
    ];
    for args in cases {
        let out = hecke(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn non_braided_file_is_rejected_naming_the_relation() {
    let out = hecke(&["verify", "--symmetry", data("not_braided.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("braid"), "{err}");
}

#[test]
fn malformed_file_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"field\": { \"min_poly\": [\"0\", \"1\"], \"q\": [\"2\"] },\n  \"dim\": 1,\n  \"matrix\": [[[\"2/0\"]]]\n}\n").unwrap();
    let out = hecke(&["verify", "--symmetry", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("matrix[0][0][0]"));
    std::fs::write(&p, "{\n  \"field\": 3,\n}").unwrap();
    let out = hecke(&["verify", "--symmetry", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn counterexample_file_matches_builtin() {
    let loaded = load_symmetry(&data("counterexample.json")).unwrap();
    let builtin = hietarinta(&FieldSpec::gaussian()).unwrap();
    assert_eq!(loaded.matrix(), builtin.matrix());
    assert_eq!(loaded.spec(), builtin.spec());
    let out = hecke(&["verify", "--symmetry", data("counterexample.json").to_str().unwrap(), "--checks", "hilbert-duality"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["config"]["field"]["min_poly"], serde_json::json!(["1", "0", "1"]));
    assert_eq!(r["results"]["hilbert-duality"]["items"][0]["witness"]["degree"], 4);
}

#[test]
fn export_then_load_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    for (name, field) in [("drinfeld_jimbo(3)", "gaussian"), ("super(2,1)", "rational"), ("one_dim", "cube-root")] {
        let p = dir.path().join("sym.json");
        let mut args = vec!["export", "--symmetry", name, "--field", field, "--out", p.to_str().unwrap()];
        if name.starts_with("super") {
            args.extend(["--q", "1"]);
        }
        assert_eq!(code(&hecke(&args)), 0, "{name}");
        let a = load_symmetry(&p).unwrap();
        save_symmetry(&a, &p).unwrap();
        let b = load_symmetry(&p).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(a.label(), name);
        let out = hecke(&["verify", "--symmetry", p.to_str().unwrap(), "--checks", "relations", "--nmax", "3"]);
        assert_eq!(code(&out), 0, "{name}");
    }
}

#[test]
fn mixed_fields_are_rejected() {
    let out = hecke(&["verify", "--symmetry", data("counterexample.json").to_str().unwrap(), "--field", "rational"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn empty_check_list_echoes_config() {
    let out = hecke(&["verify", "--symmetry", "one_dim", "--checks", "none"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"], serde_json::json!({}));
    assert_eq!(r["config"]["symmetries"][0]["builtin"], "one_dim");
}

#[test]
fn failing_report_is_still_written() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("fail.json");
    let out = hecke(&[
        "verify",
        "--symmetry",
        "hietarinta",
        "--field",
        "gaussian",
        "--checks",
        "koszul",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let r: Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    let items = r["results"]["koszul"]["items"][0]["algebras"].as_array().unwrap();
    assert_eq!(items.len(), 2);
    assert!(items.iter().all(|i| i["status"] == "fail" && i["witness"]["degree"] == 4));
}

#[test]
fn cotensor_triple_of_standard_symmetries() {
    let out = hecke(&[
        "verify",
        "--symmetry",
        "drinfeld_jimbo(2)",
        "--symmetry2",
        "drinfeld_jimbo(3)",
        "--symmetry3",
        "drinfeld_jimbo(2)",
        "--checks",
        "cotensor",
        "--nmax",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let dims: Vec<u64> = r["results"]["cotensor"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["a_dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 4, 10, 20]);
    // through a line the identification breaks, and the harness says why
    let out = hecke(&[
        "verify",
        "--symmetry",
        "drinfeld_jimbo(2)",
        "--symmetry2",
        "one_dim",
        "--symmetry3",
        "drinfeld_jimbo(2)",
        "--checks",
        "cotensor",
        "--nmax",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["cotensor"]["status"], "hypothesis-not-met");
    assert_eq!(r["results"]["cotensor"]["witness"]["degree"], 2);
}

#[test]
fn full_battery_passes_for_a_pair() {
    let out = hecke(&[
        "verify",
        "--symmetry",
        "drinfeld_jimbo(2)",
        "--symmetry2",
        "one_dim",
        "--field",
        "gaussian",
        "--checks",
        "relations,koszul,hilbert-duality,frobenius,homotopy,hom-identification,annihilator-inclusion,hecke-suite",
        "--nmax",
        "3",
        "--jobs",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["results"]["hecke-suite"]["n_max"], 3);
    assert_eq!(r["results"]["annihilator-inclusion"]["items"].as_array().unwrap().len(), 3);
}

#[test]
fn calculator_verbs() {
    let out = hecke(&["homdim", "--zeta", "2,1:a,t", "--chi", "1,2"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["homdim"]["formula"], r["results"]["homdim"]["intertwiners"]);

    let out = hecke(&["mackey", "--chi", "2,2:t,a", "--mu", "3,1", "--q", "-1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["mackey"]["module_dim"], 6);

    let out = hecke(&["dims", "--symmetry", "drinfeld_jimbo(3)", "--symmetry2", "drinfeld_jimbo(2)", "--nmax", "3"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["dims"]["symmetries"][0]["ext"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(r["results"]["dims"]["symmetries"][1]["sym"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(r["results"]["dims"]["pair"]["a"], serde_json::json!([1, 6, 21, 56]));
}
