use std::process::{Command, Output};

use serde_json::Value;

fn ieldtm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ieldtm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn summary(args: &[&str]) -> Value {
    let out = ieldtm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("summary is JSON")
}

#[test]
fn duffing_adaptive_summary() {
    let s = summary(&["solve", "--problem", "duffing", "--theta", "0.5", "--K", "5", "--tol", "1e-10"]);
    assert_eq!(s["status"], "completed");
    assert_eq!(s["oracle"], "exact");
    assert!(s["max_error"].as_f64().unwrap() <= 1e-8);
    assert!(s["steps"].as_u64().unwrap() <= 18);
}

#[test]
fn dahlquist_fixed_step_decay() {
    let s = summary(&["solve", "--problem", "dahlquist", "--lambda", "-1", "--theta", "0.5", "--K", "3", "--dt", "0.01"]);
    let x = s["final_state"][0].as_f64().unwrap();
    assert!((x - (-1f64).exp()).abs() <= 1e-6, "{x}");
    assert_eq!(s["final_time"].as_f64().unwrap(), 1.0);
}

#[test]
fn seir_conserves_population() {
    let s = summary(&[
        "solve", "--problem", "seir", "--eta", "8", "--K", "8", "--tol", "1e-5", "--oracle", "none",
    ]);
    assert_eq!(s["status"], "completed");
    assert!(s["max_error"].is_null());
    let drift = s["conserved_sum_drift"].as_f64().unwrap();
    assert!(drift <= 1e-6 * 3e6, "{drift}");
}

#[test]
fn csv_trace_has_metadata_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    summary(&[
        "solve", "--problem", "robertson", "--K", "3", "--dt", "0.125", "--oracle", "none",
        "--out", path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let meta: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    assert!(meta.contains(&"# problem: robertson"), "{meta:?}");
    assert!(meta.iter().any(|l| l.starts_with("# mode: fixed dt=0.125")));
    assert!(meta.contains(&"# status: completed"));
    let mut rows = text.lines().skip(meta.len()).filter(|l| !l.is_empty());
    assert_eq!(rows.next().unwrap(), "t,x1,x2,x3,dt,newton_iters,local_err_est");
    let last: Vec<f64> = rows.last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 4.0);
    assert!((last[1] + last[2] + last[3] - 1.0).abs() < 1e-12);
}

#[test]
fn forward_euler_grid_matches_unit_disk() {
    let out = ieldtm(&[
        "stability-grid", "--theta", "0", "--K", "1", "--re-min", "-3", "--re-max", "1", "--im-min", "-2",
        "--im-max", "2", "--n-re", "81", "--n-im", "81",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,absR"));
    let cell = 4.0 / 80.0;
    let mut n = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let dist = ((v[0] + 1.0).powi(2) + v[1].powi(2)).sqrt();
        assert!((v[2] - dist).abs() < 1e-12);
        if (dist - 1.0).abs() > cell {
            assert_eq!(v[2] <= 1.0, dist < 1.0, "({}, {})", v[0], v[1]);
        }
        n += 1;
    }
    assert_eq!(n, 81 * 81);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["solve", "--problem", "lorenz"][..],
        &["solve", "--theta", "0.3"],
        &["solve", "--K", "0"],
        &["solve", "--dt", "0.1", "--tol", "1e-6"],
        &["stability-grid", "--re-min", "2", "--re-max", "1"],
        &["solve", "--problem", "van-der-pol", "--oracle", "exact"],
    ] {
        let out = ieldtm(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn order_table_check_passes() {
    let out = ieldtm(&["table2", "--check", "--format", "json"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(out.status.success(), "{stderr}");
    assert!(!stderr.contains("FAIL"));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 18);
}
