use std::process::{Command, Output};

use nilkoszul_cli::Report;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilkoszul")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

#[test]
fn roots_of_a2() {
    let out = run(&["roots", "--type", "A2"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r.schema_version, 1);
    assert_eq!(r.records.len(), 1);
    assert_eq!(r.records[0].actual["num_positive_roots"], 3);
    assert_eq!(r.records[0].actual["weyl_order"], 6);
}

#[test]
fn custom_cartan_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    std::fs::write(&path, "[[2,-1],[-3,2]]").unwrap();
    let out = run(&["roots", "--cartan", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(report(&out).records[0].actual["num_positive_roots"], 6);
}

#[test]
fn degenerate_hilbert_series_is_one() {
    let out = run(&["hilbert", "--type", "A2", "--genus", "1", "--bound", "5"]);
    assert!(out.status.success());
    let r = report(&out);
    let series = &r.records.iter().find(|x| x.check_id.ends_with("r-equals-upsilon")).unwrap().actual;
    assert_eq!(series, &serde_json::json!([{ "lattice_point": [0, 0], "coefficient": 1 }]));
}

#[test]
fn verify_all_a1_passes() {
    let out = run(&["verify-all", "--type", "A1", "--bound", "6", "--genus", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert!(r.all_pass());
    assert_eq!(r.summary.total, r.records.len());
    assert!(r.records.iter().all(|x| !x.expected.provenance.is_empty()));
}

#[test]
fn parallelism_does_not_change_results() {
    let args = |jobs: &'static str| ["verify-all", "--type", "A2", "--bound", "4", "--genus", "2", "--jobs", jobs];
    let one = report(&run(&args("1"))).without_timing();
    let four = report(&run(&args("4"))).without_timing();
    assert_eq!(one.to_json(), four.to_json());
}

#[test]
fn empty_suite_selection_is_an_empty_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"type":"A2","bound":3,"suites":[]}"#).unwrap();
    let out = run(&["verify-all", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r.summary.total, 0);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["gl2", "--genus", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["records"][0]["actual"]["exterior_dims"], serde_json::json!([1, 2, 1]));
}

#[test]
fn failing_check_sets_exit_code() {
    let out = run(&["gl2", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!report(&out).all_pass());
}

#[test]
fn usage_errors() {
    let out = run(&["frobnicate"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert!(!run(&["roots", "--type", "A2", "--colour"]).status.success());
}

#[test]
fn invalid_config_names_the_field() {
    let out = run(&["roots", "--type", "Z9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`type`"));
    let out = run(&["kostant", "--type", "A2", "--eta", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`eta`"));
    let out = run(&["koszul", "--type", "A2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`bound`"));
    let out = run(&["verify-all", "--type", "A2", "--bound", "2", "--suites", "kostant,nope"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`suites`"));
}

#[test]
fn single_subcommands_pass() {
    for args in [
        &["kostant", "--type", "B2", "--eta", "1,1"][..],
        &["cohomology", "--type", "A2"],
        &["cohomology", "--type", "A2", "--eta", "1,0"],
        &["koszul", "--type", "A2", "--bound", "4"],
        &["hecke", "--type", "A1", "--genus", "2", "--bound", "6", "--eta", "1"],
        &["strata", "--type", "A2", "--bound", "5"],
    ] {
        let out = run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
