use std::path::{Path, PathBuf};
use std::process::Command;

use eqloc::{run, EXIT_INVALID, EXIT_OK};
use eqloc_core::geometry::parse_atlas;
use proptest::prelude::*;
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn eqloc(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eqloc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn corpus() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_path_buf();
    let o = eqloc(&["examples", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    (dir, path)
}

fn file(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn error_kind(stderr: &str) -> String {
    let v: Value = serde_json::from_str(stderr).expect("stderr is a JSON error object");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn check_sphere() {
    let (_d, dir) = corpus();
    let o = eqloc(&["check", &file(&dir, "sphere_s2.json")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "valid: 2 fixed points, symplectic, circle\n");
}

#[test]
fn reduce_hk_point_has_result_fields() {
    let (_d, dir) = corpus();
    let o = eqloc(&["reduce", "--mode", "hk", &file(&dir, "hk_point.json")]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v.get("raw_coefficient").is_some());
    assert!(v["quotient_integral"].get("coefficient").is_some());
    assert_eq!(v["engine"], "hk-circle");
}

#[test]
fn reduce_sphere_with_oracle_agrees() {
    let (_d, dir) = corpus();
    let o = eqloc(&["reduce", "--mode", "symplectic", &file(&dir, "sphere_s2.json"), "--oracle"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let rel: f64 = v["oracle_comparison"]["rel_err"].to_string().parse().unwrap();
    assert!(rel <= 1e-6, "rel_err {rel}");
}

#[test]
fn reduce_order_and_profile_flags() {
    let (_d, dir) = corpus();
    let torus = file(&dir, "hk_torus_rank2.json");
    let a = eqloc(&["reduce", "--mode", "hk", &torus]);
    let b = eqloc(&["reduce", "--mode", "hk", &torus, "--order", "y2,y1"]);
    assert_eq!((a.code, b.code), (EXIT_OK, EXIT_OK), "{}{}", a.stderr, b.stderr);
    let va: Value = serde_json::from_str(&a.stdout).unwrap();
    let vb: Value = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(vb["variable_order"], serde_json::json!(["y2", "y1"]));
    assert_eq!(va["raw_coefficient"], vb["raw_coefficient"]);

    let lit = eqloc(&["reduce", "--mode", "hk", &torus, "--profile", "literal"]);
    assert_eq!(lit.code, EXIT_OK);
    let v: Value = serde_json::from_str(&lit.stdout).unwrap();
    assert_eq!(v["convention_profile"]["name"], "literal");

    let bad = eqloc(&["reduce", "--mode", "hk", &torus, "--profile", "nope"]);
    assert_eq!(bad.code, EXIT_INVALID);
    assert_eq!(error_kind(&bad.stderr), "engine");
}

#[test]
fn weyl_mode_with_reference_and_file_roots() {
    let (_d, dir) = corpus();
    let point = file(&dir, "hk_point.json");
    let by_name = eqloc(&["reduce", "--mode", "weyl", &point, "--roots", "su2"]);
    let by_file = eqloc(&["reduce", "--mode", "weyl", &point, "--roots", &file(&dir, "su2_roots.json")]);
    assert_eq!(by_name.code, EXIT_OK, "{}", by_name.stderr);
    assert_eq!(by_name.stdout, by_file.stdout);
    let v: Value = serde_json::from_str(&by_name.stdout).unwrap();
    assert_eq!(v["weyl_order"], 2);
}

#[test]
fn localize_sphere_table_and_json() {
    let (_d, dir) = corpus();
    let o = eqloc(&["localize", &file(&dir, "sphere_s2.json"), "--format", "table"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "(0,2) y^0\n(0,-1/3) y^2\n(0,1/60) y^4\n(0,-1/2520) y^6\n");
    let o = eqloc(&["localize", &file(&dir, "sphere_s2.json")]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["series"]["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_subcommands() {
    let (d, dir) = corpus();
    let o = eqloc(&["oracle", &file(&dir, "sphere_s2.json"), "--mode", "symplectic", "--t", "100,1000,10000"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["ladder_values"].as_array().unwrap().len(), 3);

    let o = eqloc(&["oracle", "--suptsq", "0", "0", "--t", "1,10"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);

    let series = d.path().join("series.json");
    std::fs::write(&series, r#"{"terms":[{"exp":[-2],"re":[3,1],"im":[0,1]},{"exp":[1],"re":[1,1],"im":[1,1]}]}"#).unwrap();
    let o = eqloc(&["oracle", "--contour", series.to_str().unwrap(), "2"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let err: f64 = v["abs_err"].to_string().parse().unwrap();
    assert!(err < 1e-10);

    let o = eqloc(&["oracle", "--suptsq", "1", "0", "--contour", "x", "1"]);
    assert_eq!(o.code, EXIT_INVALID);
}

#[test]
fn roots_reference_table() {
    let o = eqloc(&["roots", "su2"]);
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!({"positive": [[2]], "weyl_order": 2}));
}

#[test]
fn examples_are_byte_stable_and_reparse() {
    let (_a, first) = corpus();
    let (_b, second) = corpus();
    for name in ["sphere_s2.json", "mirror_pair_7.json", "hk_point.json", "hk_torus_rank2.json", "su2_roots.json"] {
        let x = std::fs::read(first.join(name)).unwrap();
        let y = std::fs::read(second.join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    for name in ["sphere_s2.json", "mirror_pair_7.json", "hk_point.json", "hk_torus_rank2.json"] {
        let o = eqloc(&["check", "--format", "json", &file(&first, name)]);
        assert_eq!(o.code, EXIT_OK, "{name}: {}", o.stderr);
        parse_atlas(&std::fs::read_to_string(first.join(name)).unwrap()).unwrap();
    }
}

#[test]
fn validation_errors_are_json_on_stderr() {
    let (d, dir) = corpus();
    let o = eqloc(&["check", "/definitely/not/here.json"]);
    assert_eq!((o.code, error_kind(&o.stderr).as_str()), (EXIT_INVALID, "io"));

    let bad = d.path().join("bad.json");
    std::fs::write(&bad, "{\"group\": 3}").unwrap();
    let o = eqloc(&["check", bad.to_str().unwrap()]);
    assert_eq!((o.code, error_kind(&o.stderr).as_str()), (EXIT_INVALID, "schema"));

    let o = eqloc(&["reduce", "--mode", "hk", &file(&dir, "sphere_s2.json")]);
    assert_eq!((o.code, error_kind(&o.stderr).as_str()), (EXIT_INVALID, "engine"));

    let o = eqloc(&["reduce", "--mode", "bogus", &file(&dir, "sphere_s2.json")]);
    assert_eq!(o.code, EXIT_INVALID);

    let o = eqloc(&["check", &file(&dir, "sphere_s2.json"), "--unknown-flag"]);
    assert_eq!((o.code, error_kind(&o.stderr).as_str()), (EXIT_INVALID, "usage"));
    assert!(o.stdout.is_empty());
}

#[test]
fn binary_exit_codes() {
    let (_d, dir) = corpus();
    let bin = env!("CARGO_BIN_EXE_eqloc");
    let ok = Command::new(bin).args(["check", &file(&dir, "sphere_s2.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "valid: 2 fixed points, symplectic, circle\n");
    let bad = Command::new(bin).args(["check", "/definitely/not/here.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Arbitrary bytes as an atlas file: never a success, never internal.
    #[test]
    fn garbage_atlas_is_a_validation_error(body in ".{0,200}") {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.json");
        std::fs::write(&path, &body).unwrap();
        let o = eqloc(&["check", path.to_str().unwrap()]);
        prop_assert_eq!(o.code, EXIT_INVALID);
        error_kind(&o.stderr);
    }

    /// Unknown flags are errors, not warnings.
    #[test]
    fn unknown_flags_are_usage_errors(flag in "--[a-z]{3,12}") {
        prop_assume!(!["--format", "--help", "--version"].contains(&flag.as_str()));
        let o = eqloc(&["roots", "su2", &flag]);
        prop_assert_eq!(o.code, EXIT_INVALID);
        prop_assert_eq!(error_kind(&o.stderr), "usage");
    }

    /// Dropping a required top-level key from a valid atlas is a schema error.
    #[test]
    fn truncated_atlas_is_rejected(key in prop::sample::select(vec!["group", "geometry", "dim_M", "fixed_points", "variable_order"])) {
        let (dir, corpus_dir) = corpus();
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(corpus_dir.join("sphere_s2.json")).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove(key);
        let path = dir.path().join("cut.json");
        std::fs::write(&path, v.to_string()).unwrap();
        let o = eqloc(&["check", path.to_str().unwrap()]);
        prop_assert_eq!(o.code, EXIT_INVALID);
    }
}
