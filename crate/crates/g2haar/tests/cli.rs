//! End-to-end tests of the `g2haar` binary: exit codes, output formats,
//! determinism of sample files, and flag handling.

use std::process::{Command, Output};

fn g2haar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2haar"))
        .args(args)
        .env_remove("G2_HAAR_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l:?}: {e}")))
        .collect()
}

#[test]
fn verify_passes_on_the_adjoint_backend() {
    let out = g2haar(&["verify", "--backend", "adjoint"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let checks: Vec<&serde_json::Value> =
        lines.iter().filter(|l| l.get("check").is_some()).collect();
    assert_eq!(checks.len(), 26);
    let conjugation = checks
        .iter()
        .filter(|l| l["check"].as_str().unwrap().starts_with("conjugation/"))
        .count();
    assert_eq!(conjugation, 13, "thirteen conjugation-identity lines");
    let jacobi = checks
        .iter()
        .find(|l| l["check"] == "structure-constants/jacobi")
        .expect("jacobi line");
    assert!(jacobi["residual"].as_f64().unwrap() <= 1e-12);
    assert_eq!(lines.last().unwrap()["summary"], "PASS");
}

#[test]
fn verify_rejects_unknown_backend() {
    let out = g2haar(&["verify", "--backend", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = g2haar(&["verify", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = g2haar(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_tolerance_key_is_a_usage_error() {
    let out = g2haar(&["verify", "--tolerance", "bogus=1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = g2haar(&["verify", "--tolerance", "jacobi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sample_emits_header_and_reruns_bit_identically() {
    let args = ["sample", "-n", "3", "--seed", "42"];
    let first = g2haar(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = g2haar(&args);
    assert_eq!(first.stdout, second.stdout, "sample output must be reproducible");

    let lines = stdout_lines(&first);
    assert_eq!(lines.len(), 4, "header plus three records");
    let header = &lines[0];
    assert_eq!(header["format"], "g2-haar/1");
    assert_eq!(header["backend"], "adjoint");
    assert_eq!(header["seed"], 42);
    assert_eq!(header["n"], 3);
    assert!(header["version"].is_string());
    for record in &lines[1..] {
        let alpha = record["alpha"].as_array().unwrap();
        let gamma = record["gamma"].as_array().unwrap();
        assert_eq!(alpha.len(), 6);
        assert_eq!(gamma.len(), 8);
        assert!(record["density"].as_f64().unwrap() >= 0.0);
        assert!(record.get("matrix").is_none());
        // in-range coordinates
        let a: Vec<f64> = alpha.iter().map(|v| v.as_f64().unwrap()).collect();
        assert!(a[0] <= std::f64::consts::PI && a[0] >= 0.0);
        assert!(a[1] <= std::f64::consts::FRAC_PI_2);
    }
}

#[test]
fn sample_respects_the_seed_env_fallback() {
    let with_flag = g2haar(&["sample", "-n", "2", "--seed", "7"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_g2haar"))
        .args(["sample", "-n", "2"])
        .env("G2_HAAR_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn sample_emit_matrix_appends_the_group_matrix() {
    let out = g2haar(&["sample", "-n", "1", "--seed", "5", "--emit-matrix"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let matrix = lines[1]["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 14 * 14, "row-major adjoint matrix");
}

#[test]
fn sample_csv_has_the_documented_column_order() {
    let out = g2haar(&["sample", "-n", "2", "--seed", "9", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let comment = lines.next().unwrap();
    assert!(comment.starts_with("# format=g2-haar/1 backend=adjoint seed=9 n=2"));
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "alpha1,alpha2,alpha3,alpha4,alpha5,alpha6,gamma1,gamma2,gamma3,gamma4,gamma5,gamma6,gamma7,gamma8,density"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 15);
        // full-precision round trip
        for f in fields {
            let v: f64 = f.parse().unwrap();
            assert_eq!(format!("{v}"), f);
        }
    }
}

#[test]
fn sample_writes_to_output_path() {
    let dir = std::env::temp_dir().join(format!("g2haar-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("samples.jsonl");
    let out = g2haar(&["sample", "-n", "2", "--seed", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn integrate_reports_an_estimate() {
    let out = g2haar(&["integrate", "-n", "200", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["function"], "trace");
    assert_eq!(lines[0]["n"], 200);
    assert!(lines[0]["mean"].is_f64());
    assert!(lines[0]["stderr"].as_f64().unwrap() > 0.0);
    // determinism across invocations
    let again = g2haar(&["integrate", "-n", "200", "--seed", "11"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn moments_pass_at_small_sample_size() {
    let out = g2haar(&["moments", "-n", "4000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    for line in &lines {
        assert_eq!(line["pass"], true);
    }
}

#[test]
fn moments_with_ks_channels() {
    let out = g2haar(&["moments", "-n", "2000", "--seed", "7", "--ks-draws", "20000"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 5, "two moments plus three KS channels");
    for line in &lines[2..] {
        assert!(line["distance"].as_f64().unwrap() <= line["critical"].as_f64().unwrap());
    }
}

#[test]
fn volume_matches_closed_forms() {
    let out = g2haar(&["volume"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["summary"], "PASS");
    let v_su3 = lines[0]["v_su3"].as_f64().unwrap();
    assert!((v_su3 - 3f64.sqrt() * std::f64::consts::PI.powi(5)).abs() < 1e-8);
}

#[test]
fn metric_check_reports_the_constant_ratio() {
    let out = g2haar(&["metric-check", "--points", "8", "--seed", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["summary"], "PASS");
    let mean = lines[0]["ratio_mean"].as_f64().unwrap();
    assert!((mean - 0.5).abs() < 1e-6, "ratio constant {mean}");
    assert!(lines[0]["ratio_spread"].as_f64().unwrap() <= 1e-4);
}

#[test]
fn invariance_suite_passes_quickly() {
    let out = g2haar(&["invariance", "-n", "4000", "-k", "2", "--seed", "21"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    // 2 translations x 4 functions x 2 sides + summary
    assert_eq!(lines.len(), 17);
    assert_eq!(lines.last().unwrap()["summary"], "PASS");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(g2haar(&["--help"]).status.code(), Some(0));
    assert_eq!(g2haar(&["--version"]).status.code(), Some(0));
}
