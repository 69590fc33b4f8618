use std::io::Write;

use formpreserve::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use formpreserve::wavefields::{airy_beam, dispersing_free_state, ho_eigenstate};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["formpreserve"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn config(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn unknown_suite_and_key_are_usage_errors() {
    assert_eq!(call(&["verify", "everything"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    let bad = config(r#"{"b": 1.0, "colour": "red"}"#);
    let (code, _, err) = call(&["generate", "airy_beam", "--config", bad.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("colour"), "{err}");
    let neg = config(r#"{"mass": -1.0}"#);
    assert_eq!(call(&["generate", "senitzky", "--config", neg.path().to_str().unwrap()]).0, EXIT_USAGE);
    assert_eq!(call(&["transform"]).0, EXIT_USAGE);
    assert_eq!(call(&["transform", "--preset", "galilean"]).0, EXIT_USAGE);
    assert_eq!(call(&["generate", "airy_beam", "--tol", "1e-3"]).0, EXIT_USAGE);
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("generate"));
}

#[test]
fn wave_csv_schema_and_precision() {
    let cfg = config(r#"{"x_min": -2.0, "x_max": 2.0, "points": 9, "times": [0.25]}"#);
    let (code, out, _) = call(&["generate", "airy_beam", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("x,t,re,im,abs2\n"));
    assert!(!out.contains('\r'));
    let data = rows(&out);
    assert_eq!(data.len(), 9);
    for r in data {
        let z = airy_beam(r[0], r[1], 1.0, 1.0, 1.0).unwrap();
        // seventeen significant digits round-trip exactly
        assert_eq!(r[2], z.re);
        assert_eq!(r[3], z.im);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (code, _, _) = call(&["generate", "wigner_field", "--preset", "senitzky", "--grid-n", "128", "--out", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("x,p,w\n"));
    assert_eq!(text.lines().count(), 1 + 128 * 64);
}

#[test]
fn senitzky_at_rest_has_constant_density() {
    let cfg = config(r#"{"a": 0.0, "points": 65, "x_min": -4, "x_max": 4, "times": [0.0, 0.8, 2.1]}"#);
    let (code, out, _) = call(&["generate", "senitzky", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let data = rows(&out);
    for k in 0..65 {
        let d0 = data[k][4];
        for block in 1..3 {
            assert!((data[block * 65 + k][4] - d0).abs() < 1e-15);
        }
    }
}

#[test]
fn identity_transform_round_trips_exactly() {
    let cfg = config(r#"{"n": 2, "points": 33, "times": [0.0, 0.7]}"#);
    let (code, out, _) = call(&["transform", "--preset", "identity", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("x,t,re,im,abs2,v\n"));
    for r in rows(&out) {
        let z = ho_eigenstate(2, r[0], r[1], 1.0, 1.0, 1.0).unwrap();
        assert_eq!((r[2], r[3]), (z.re, z.im));
        assert_eq!(r[5], 0.5 * r[0] * r[0]);
    }
}

#[test]
fn free_ho_transform_matches_dispersing_state() {
    let cfg = config(r#"{"v0": 0.5, "x0": 0.2, "points": 101, "times": [0.0, 1.0, 3.0]}"#);
    let (code, out, _) = call(&["transform", "--preset", "free_ho", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    for r in rows(&out) {
        let z = dispersing_free_state(0, r[0], r[1], 0.5, 0.2, 1.0, 1.0, 1.0).unwrap();
        assert!((r[2] - z.re).abs() < 1e-8 && (r[3] - z.im).abs() < 1e-8);
        assert!(r[5].abs() < 1e-12);
    }
}

#[test]
fn berry_balazs_transform_matches_airy_beam() {
    let cfg = config(r#"{"x_min": -12, "x_max": 4, "points": 81, "times": [0.0, 0.6, 1.3]}"#);
    let (code, out, _) = call(&["transform", "--preset", "berry_balazs", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    for r in rows(&out) {
        let z = airy_beam(r[0], r[1], 1.0, 1.0, 1.0).unwrap();
        assert!((r[2] - z.re).abs() < 1e-10 && (r[3] - z.im).abs() < 1e-10, "{r:?} vs {z}");
        assert!(r[5].abs() < 1e-12);
    }
}

#[test]
fn singular_map_is_a_check_failure() {
    let cfg = config(r#"{"times": [100.0]}"#);
    let (code, _, err) = call(&["transform", "--preset", "free_ho", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("window"), "{err}");
}

#[test]
fn level_curves_are_three_rigid_parabolas() {
    let (code, out, _) = call(&["generate", "level_curves", "--preset", "berry_balazs"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("curve_id,vertex_id,x,p\n"));
    let ids: std::collections::BTreeSet<u64> = rows(&out).iter().map(|r| r[0] as u64).collect();
    assert_eq!(ids.len(), 3);
    let (code, out, _) = call(&["generate", "ellipse_family", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[2]["closed"].as_bool().unwrap());
}

#[test]
fn verify_moyal_reports_nonlinear_booleans() {
    let (code, out, err) = call(&["verify", "moyal"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let reports: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    for r in &reports {
        for key in ["name", "passed", "metric", "tolerance", "runtime_ms", "metadata"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
        let (m, t) = (r["metric"].as_f64().unwrap(), r["tolerance"].as_f64().unwrap());
        assert_eq!(r["passed"].as_bool().unwrap(), m <= t);
    }
    let nl = reports.iter().find(|r| r["name"] == "nonlinear_ct_example").unwrap();
    assert_eq!(nl["metadata"]["P12_equal"], Value::Bool(false));
    assert_eq!(nl["metadata"]["identified_P_equal"], Value::Bool(true));
    assert_eq!(nl["metadata"]["identified_M_equal"], Value::Bool(false));
    assert!(err.contains("P12_equal=false identified_P_equal=true identified_M_equal=false"));
}

#[test]
fn tight_tolerance_fails_with_exit_one() {
    let (code, out, _) = call(&["verify", "fields3d", "--tol", "1e-30"]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(out.lines().any(|l| l.contains("\"passed\":false")));
}
