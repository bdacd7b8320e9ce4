use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whittaker")).args(args).env_remove("WHITTAKER_MAX_TERMS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_m_json_record() {
    let o = run(&["eval", "m", "--kappa", "0", "--mu", "0.5", "--x", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for key in ["target", "params", "x", "value", "abs_err_est", "route", "citations"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    // 2 sinh(1)
    assert!((v["value"].as_f64().unwrap() - 2.350_402_387_287_603).abs() < 1e-13);
    assert_eq!(v["route"], "series");
    assert!(stdout(&o).contains("e0"));
}

#[test]
fn half_integer_negative_mu_is_a_usage_error() {
    let o = run(&["eval", "m", "--kappa", "0", "--mu", "-0.5", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2mu != -1"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["eval", "nope", "--x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "m", "--kappa", "0", "--x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "m", "--kappa", "0", "--mu", "1", "--x", "3:1:1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "m", "--kappa", "0", "--mu", "1", "--x", "1", "--route", "quad"]).status.code(), Some(2));
    assert_eq!(run(&["table", "T9"]).status.code(), Some(2));
    assert_eq!(run(&["table", "T5", "--x", "60"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn range_is_inclusive_and_csv_has_fixed_columns() {
    let o = run(&["eval", "g1", "--a", "0.5", "--b", "1.5", "--x", "0.5:2:0.5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "target,params,x,value,abs_err_est,route,citations");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("g1,a=0.5;b=1.5,2.0000000000000000e0,"));
}

#[test]
fn text_uses_ten_digits() {
    let o = run(&["eval", "gammainc-dnu", "--nu", "1", "--x", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-0.7965995993"), "{}", stdout(&o));
}

#[test]
fn max_terms_env_caps_series() {
    let o = Command::new(env!("CARGO_BIN_EXE_whittaker"))
        .args(["eval", "m", "--kappa", "0", "--mu", "0.5", "--x", "20", "--route", "series"])
        .env("WHITTAKER_MAX_TERMS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("did not converge"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_whittaker"))
        .args(["eval", "m", "--kappa", "0", "--mu", "0.5", "--x", "1"])
        .env("WHITTAKER_MAX_TERMS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_file_receives_results() {
    let dir = std::env::temp_dir().join(format!("whittaker-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let o = run(&["table", "T5", "--x", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with(
        "table,kappa,mu,x,closed_value,independent_value,rel_diff,tol,status,independent_route,citation,reason"
    ));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn table_output_is_byte_reproducible() {
    let a = run(&["table", "T3B", "--x", "0.5,1,2", "--format", "json"]);
    let b = run(&["table", "T3B", "--x", "0.5,1,2", "--format", "json", "--sequential"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_single_suite_prints_summary() {
    let o = run(&["verify", "--suite", "integral_relations", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total: 450/450 checks passed"), "{}", stdout(&o));
}

#[test]
fn verify_failure_exits_one() {
    // an impossible tolerance makes finite-difference checks fail
    let o = run(&["verify", "--suite", "series_vs_fd", "--tol-fd", "1e-300", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn verify_grid_overrides_apply() {
    let o = run(&["verify", "--suite", "incgamma", "--mu", "2.5", "--x", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nu=2.5/x=3"));
}
