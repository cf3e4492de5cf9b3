//! End-to-end checks of the binary: exit-status contract, output formats,
//! domain handling, and tabulation behavior.

use std::process::{Command, Output};

fn eikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eikit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal kills expected")
}

#[test]
fn eval_ei_at_one_prints_the_known_value() {
    let out = eikit(&["eval", "ei", "--x", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("1.895117816355936"));
    assert!(stdout(&out).contains("PuiseuxSeries"));
}

#[test]
fn eval_ei_at_zero_is_a_domain_error() {
    let out = eikit(&["eval", "ei", "--x", "0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(
        stderr(&out).contains("R\\{0}"),
        "message must name the domain restriction: {}",
        stderr(&out)
    );
}

#[test]
fn eval_li_quadrature_route() {
    let out = eikit(&["eval", "li", "--x", "2", "--method", "quadrature"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("1.045163780117493"));
}

#[test]
fn eval_li_at_one_is_a_domain_error() {
    let out = eikit(&["eval", "li", "--x", "1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn eval_rejects_nonfinite_x() {
    let out = eikit(&["eval", "ei", "--x", "inf"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn eval_rejects_unparseable_x_via_clap() {
    let out = eikit(&["eval", "ei", "--x", "two"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn eval_methods_cover_all_routes() {
    for method in ["series", "quadrature", "lemma1", "auto"] {
        let out = eikit(&["eval", "ei", "--x", "2", "--method", method]);
        assert_eq!(exit_code(&out), 0, "method {method}");
        // routes agree to their combined bounds; compare a 14-digit prefix
        assert!(stdout(&out).contains("4.9542343560018"), "method {method}");
    }
    // identity route is rejected where it does not apply
    let out = eikit(&["eval", "goodwin_staton", "--x", "1", "--method", "lemma1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn eval_goodwin_staton_sides_agree() {
    let rhs = eikit(&["eval", "goodwin_staton", "--x", "1", "--format", "csv"]);
    let lhs = eikit(&[
        "eval",
        "goodwin_staton",
        "--x",
        "1",
        "--method",
        "quadrature",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&rhs), 0);
    assert_eq!(exit_code(&lhs), 0);
    let parse = |s: &str| -> f64 {
        s.lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap()
            .parse()
            .unwrap()
    };
    let (a, b) = (parse(&stdout(&rhs)), parse(&stdout(&lhs)));
    assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
}

#[test]
fn eval_far_outside_the_working_range_exits_3() {
    // at x = 400 the Puiseux terms are still growing when the term cap
    // hits; asymptotic expansions for huge |x| are out of scope
    let out = eikit(&["eval", "ei", "--x", "400"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("converge"));
}

#[test]
fn table_over_a_clean_interval_is_monotone_csv() {
    let out = eikit(&[
        "table", "ei", "--x-min", "1", "--x-max", "2", "--points", "3", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "x,value,error_bound,method");
    let values: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    assert!(values[0] < values[1] && values[1] < values[2]);
    assert!(!body.contains('\r'), "LF line endings only");
}

#[test]
fn table_hitting_the_singularity_fails_without_the_flag() {
    let out = eikit(&[
        "table", "ei", "--x-min", "-1", "--x-max", "1", "--points", "3",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = eikit(&[
        "table",
        "ei",
        "--x-min",
        "-1",
        "--x-max",
        "1",
        "--points",
        "3",
        "--skip-singular",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 3); // header + 2 surviving rows
}

#[test]
fn table_li_grid_is_strictly_increasing() {
    let out = eikit(&[
        "table", "li", "--x-min", "1.2", "--x-max", "2", "--points", "5", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    let values: Vec<f64> = body
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 5);
    for pair in values.windows(2) {
        assert!(pair[0] < pair[1]);
    }
}

#[test]
fn table_rejects_degenerate_grids() {
    let out = eikit(&[
        "table", "ei", "--x-min", "2", "--x-max", "1", "--points", "3",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = eikit(&[
        "table", "ei", "--x-min", "1", "--x-max", "2", "--points", "1",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn constants_reports_agreeing_routes() {
    let out = eikit(&["constants"]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    assert!(body.contains("1.4513692348833811"));
    // three gamma rows present
    assert_eq!(body.matches("gamma (").count(), 3);
}

#[test]
fn verify_with_absurdly_tight_scale_exits_1_and_lists_failures() {
    let out = eikit(&["verify", "--tol-scale", "1e-6"]);
    assert_eq!(exit_code(&out), 1);
    let body = stdout(&out);
    assert!(body.contains("FAIL"));
    // exact checks are immune to scaling
    assert!(body.contains("[PASS] exact_binomial_harmonic[n=1]"));
}

#[test]
fn verify_json_is_well_formed_with_contractual_keys() {
    let out = Command::new(env!("CARGO_BIN_EXE_eikit"))
        .args(["verify", "--format", "json"])
        .env("EIKIT_FIXED_TIMESTAMP", "1970-01-01T00:00:00Z")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["generated_at"], "1970-01-01T00:00:00Z");
    assert!(doc["records"].as_array().unwrap().len() >= 83);
    // floats carry 17 significant digits
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"tol_scale\":1.0000000000000000e0"));
}

#[test]
fn verify_csv_has_header_and_lf_endings() {
    let out = eikit(&["verify", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    assert!(body.starts_with("name,lhs,rhs,abs_diff,tolerance,pass\n"));
    assert!(!body.contains('\r'));
}

#[test]
fn usage_errors_from_the_parser_exit_2() {
    let out = eikit(&["eval", "nosuchfunction", "--x", "1"]);
    assert_eq!(exit_code(&out), 2);
    let out = eikit(&["nosuchcommand"]);
    assert_eq!(exit_code(&out), 2);
}
