//! Binary-level tests: flag parsing, config layering, exit codes, report
//! schema, and witness files.

use std::process::Command;

fn pmm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pmm"))
}

fn run_json(args: &[&str]) -> (serde_json::Value, i32) {
    let out = pmm().args(args).env_remove("PMM_TRIALS").output().unwrap();
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap(), code)
}

#[test]
fn empty_check_list_is_a_passing_empty_report() {
    let (report, code) = run_json(&["--checks", "", "--trials", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["checks"].as_array().unwrap().len(), 0);
    assert_eq!(report["aggregate"], serde_json::json!(true));
}

#[test]
fn checks_filter_selects_families() {
    let (report, code) = run_json(&["--checks", "cdj,kantorovich", "--trials", "2", "--q", "2"]);
    assert_eq!(code, 0);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        let name = c["name"].as_str().unwrap();
        assert!(
            name.starts_with("cdj/") || name.starts_with("kantorovich/"),
            "unexpected entry {name}"
        );
        assert_eq!(c["trials"], serde_json::json!(2));
    }
}

#[test]
fn single_trial_reports_one_margin_per_check() {
    let (report, code) = run_json(&["--checks", "power-family", "--trials", "1", "--q", "2"]);
    assert_eq!(code, 0);
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["trials"], serde_json::json!(1));
        assert!(c["worst_margin"].is_number());
    }
}

#[test]
fn report_schema_fields_present() {
    let (report, _) = run_json(&["--checks", "unital", "--trials", "1", "--q", "2"]);
    assert!(report["schema_version"].is_number());
    assert!(report["version"].is_string());
    let cfg = &report["config"];
    for key in ["checks", "q", "k", "n", "trials", "seed", "tol", "spectrum", "jobs"] {
        assert!(!cfg[key].is_null() || key == "checks", "missing config.{key}");
    }
    let entry = &report["checks"].as_array().unwrap()[0];
    for key in ["name", "holds", "worst_margin", "trials", "seed", "wall_ms", "witness_ref"] {
        assert!(
            entry.get(key).is_some(),
            "missing checks[].{key}: {entry}"
        );
    }
    assert!(report["aggregate"].is_boolean());
}

#[test]
fn invalid_spectrum_is_usage_error() {
    let out = pmm().args(["--spectrum", "0,2"]).output().unwrap();
    assert_eq!(out.status.code().unwrap(), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("spectrum"), "{err}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = pmm().arg("--frobnicate").output().unwrap();
    assert_eq!(out.status.code().unwrap(), 2);
}

#[test]
fn malformed_config_file_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = pmm().args(["--config", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code().unwrap(), 2);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"trails": 5}"#).unwrap();
    let out = pmm().args(["--config", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code().unwrap(), 2);
}

#[test]
fn flags_override_file_and_env_overrides_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(
        &path,
        r#"{"trials": 9, "seed": 5, "checks": ["unital"], "q": 2}"#,
    )
    .unwrap();
    // file only
    let out = pmm().args(["--config", path.to_str().unwrap()]).output().unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report["config"]["trials"], serde_json::json!(9));
    assert_eq!(report["config"]["seed"], serde_json::json!(5));

    // env overrides file
    let out = pmm()
        .args(["--config", path.to_str().unwrap()])
        .env("PMM_TRIALS", "4")
        .output()
        .unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report["config"]["trials"], serde_json::json!(4));

    // flags override both
    let out = pmm()
        .args(["--config", path.to_str().unwrap(), "--trials", "2"])
        .env("PMM_TRIALS", "4")
        .output()
        .unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report["config"]["trials"], serde_json::json!(2));
}

#[test]
fn catalog_entry_fails_as_expected_and_aggregate_passes() {
    let (report, code) = run_json(&["--checks", "catalog", "--trials", "1"]);
    assert_eq!(code, 0);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    let c = &checks[0];
    assert_eq!(c["holds"], serde_json::json!(false));
    assert_eq!(c["expected_violation"], serde_json::json!(true));
    assert_eq!(c["ok"], serde_json::json!(true));
    let raw = c["worst_margin_raw"].as_f64().unwrap();
    assert!((raw + 2.0).abs() < 1e-10);
    assert_eq!(report["aggregate"], serde_json::json!(true));
}

#[test]
fn expected_catalog_violation_writes_no_witness() {
    use pmm_cli::config::SuiteConfig;
    let dir = tempfile::tempdir().unwrap();
    let cfg = SuiteConfig {
        witness_dir: Some(dir.path().to_path_buf()),
        trials: 3,
        q: 2,
        checks: Some(vec!["catalog".to_string()]),
        ..Default::default()
    };
    let report = pmm_cli::run_suite(&cfg).unwrap();
    assert!(report.aggregate);
    assert!(report.entries.iter().all(|e| e.witness_ref.is_none()));
}

#[test]
fn unexpected_violation_writes_a_replayable_witness_file() {
    // Build a genuinely violated check result (the pinned counterexample)
    // and run it through the witness writer as an unexpected violation.
    let res = pmm_core::checks::check_cdj_at(
        &pmm_core::MapDescriptor::hadamard(2, 2).unwrap(),
        &pmm_core::ScalarFunction::square_minus_identity(),
        pmm_core::checks::Direction::Convex,
        vec![
            pmm_core::HermitianMatrix::identity(2).scale(2.0),
            pmm_core::HermitianMatrix::identity(2),
        ],
        1,
        1e-8,
    )
    .unwrap();
    assert!(!res.holds);
    let expected_margin = res.worst_margin;

    let mut entries = vec![pmm_cli::EntryReport {
        name: "cdj/hadamard/violation".to_string(),
        expected_violation: false,
        result: Some(res),
        error: None,
        ok: false,
        wall_ms: 0,
        witness_ref: None,
    }];
    let dir = tempfile::tempdir().unwrap();
    pmm_cli::suite::write_witness_files(&mut entries, dir.path());

    let path = entries[0].witness_ref.as_ref().expect("witness written");
    let text = std::fs::read_to_string(path).unwrap();
    // self-contained: replays to the reported margin without the config
    let witness: pmm_core::checks::Witness = serde_json::from_str(&text).unwrap();
    let margin = witness.replay().unwrap();
    assert!((margin.scaled() - expected_margin).abs() <= 1e-12);
}
