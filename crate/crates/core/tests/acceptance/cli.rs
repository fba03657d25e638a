//! The `spinkin` binary: exit codes, JSON shape, tolerance precedence.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn spinkin(args: &[&str], env_tol: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spinkin"));
    cmd.args(args).env_remove("SPINKIN_TOL");
    if let Some(t) = env_tol {
        cmd.env("SPINKIN_TOL", t);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn parity_at_rest_prints_the_chirality_swap() {
    let out = spinkin(&["parity", "--spin", "1", "--mass", "1", "--p", "0,0,0"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "parity");
    assert_eq!((v["matrix"]["rows"].as_u64(), v["matrix"]["cols"].as_u64()), (Some(6), Some(6)));
    let data = v["matrix"]["data"].as_array().unwrap();
    for (k, entry) in data.iter().enumerate() {
        let (i, j) = (k / 6, k % 6);
        let want = if i.abs_diff(j) == 3 { 1.0 } else { 0.0 };
        assert_eq!(entry, &json!([want, 0.0]), "entry ({i},{j})");
    }
}

#[test]
fn elko_g_standard_pair_matches_the_derived_matrix() {
    let out = spinkin(&["elko", "g", "--u", "1,0", "--v", "0,1"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let data = v["G"]["data"].as_array().unwrap();
    let nonzero = [(3, [0.0, -1.0]), (6, [0.0, 1.0]), (9, [0.0, -1.0]), (12, [0.0, 1.0])];
    for (k, entry) in data.iter().enumerate() {
        let want = nonzero.iter().find(|(i, _)| *i == k).map_or([0.0, 0.0], |(_, e)| *e);
        assert_eq!(entry, &json!(want), "entry {k}");
    }
    assert_eq!(v["witness"]["conditions_hold"], false);
}

#[test]
fn check_all_passes_and_reports_every_suite() {
    let out = spinkin(&["check", "all", "--seed", "3", "--samples", "10"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["max_residuals"].as_object().unwrap().keys().map(String::as_str).collect();
    for prefix in [
        "dirac_parity",
        "involution/",
        "field_equation/",
        "covariance/",
        "kinematic/",
        "antilinear/",
        "elko/",
        "g_operator/",
        "decomposition/",
        "swap/",
        "origin/",
        "gamma_tensor/",
    ] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "missing {prefix}");
    }
    assert!(v.get("runtime_ms").is_none());
}

#[test]
fn failing_check_exits_one() {
    let out = spinkin(&["check", "kinematic", "--family", "antilinear", "--a", "2", "--b", "-i"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["pass"], false);
}

#[test]
fn usage_errors_exit_two_with_usage_on_stderr() {
    let out = spinkin(&["parity", "--spin", "1", "--mass", "1", "--frobnicate"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let off_shell = spinkin(&["parity", "--spin", "1", "--mass", "-1"], None);
    assert_eq!(off_shell.status.code(), Some(2));
    assert!(off_shell.stdout.is_empty());
}

#[test]
fn tolerance_flag_wins_over_environment() {
    let bad_env = spinkin(&["elko", "g", "--u", "1,0", "--v", "0,1"], Some("not-a-number"));
    assert_eq!(bad_env.status.code(), Some(2));
    let flag = spinkin(&["--tol", "1e-8", "elko", "g", "--u", "1,0", "--v", "0,1"], Some("not-a-number"));
    assert_eq!(flag.status.code(), Some(0));

    // A loose tolerance makes a nearly dependent pair acceptable; the
    // environment applies when no flag is given, and the flag overrides it.
    let args = ["elko", "g", "--u", "1,0", "--v", "1,1e-6"];
    assert_eq!(spinkin(&args, None).status.code(), Some(0));
    assert_eq!(spinkin(&args, Some("1e-3")).status.code(), Some(2));
    let mut flagged = vec!["--tol", "1e-9"];
    flagged.extend(args);
    assert_eq!(spinkin(&flagged, Some("1e-3")).status.code(), Some(0));
}

#[test]
fn every_subcommand_emits_versioned_json() {
    let cases: &[&[&str]] = &[
        &["generators", "--spin", "3/2"],
        &["spinors", "--spin", "1", "--mass", "2", "--p", "0.1,-0.2,0.3"],
        &["fieldeq", "--spin", "2", "--mass", "1", "--p", "1,1,1"],
        &["gammatensor", "--spin", "1/2", "--seed", "5"],
        &["elko", "nogo", "--samples", "500", "--seed", "1"],
        &["elko", "origin"],
        &["decompose", "--mass", "1", "--p", "0,0,2"],
        &["check", "kinematic", "--spin", "1", "--family", "parity-like", "--a", "0.5+0.5i"],
    ];
    for args in cases {
        let out = spinkin(args, None);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json_of(&out);
        assert_eq!(v["schema_version"], 1, "{args:?}");
        assert!(v["command"].is_string(), "{args:?}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["elko", "nogo", "--samples", "2000", "--seed", "9"];
    assert_eq!(spinkin(&args, None).stdout, spinkin(&args, None).stdout);
}
