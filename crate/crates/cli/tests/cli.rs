use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mulfrac")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn json_series_shape() {
    let out = run(&[
        "eval", "--op", "mrl-deriv", "--fn", "e", "--alpha", "0.5", "--a", "0", "--b", "1",
        "--grid", "9", "--out", "json", "--ref",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["x", "value", "reference", "abs_err"] {
        assert_eq!(doc[key].as_array().unwrap().len(), 9, "{key}");
    }
    // The terminal value is singular and serializes as null.
    assert!(doc["value"][0].is_null());
    assert_eq!(doc["meta"]["op"], "mrl-deriv");
    assert_eq!(doc["meta"]["order"], 0.5);
    assert_eq!(doc["meta"]["side"], "left");
    assert_eq!(doc["meta"]["grid"], 9);
}

#[test]
fn json_without_reference_omits_columns() {
    let out = run(&["eval", "--op", "mint", "--fn", "exp(t)", "--a", "0", "--b", "1", "--grid", "5", "--out", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc.get("reference").is_none());
    assert!(doc["meta"]["order"].is_null());
}

#[test]
fn mderiv_of_exponential_is_e() {
    let out = run(&["eval", "--op", "mderiv", "--fn", "exp(t^2/2)", "--a", "0", "--b", "1", "--grid", "257"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[1] / cols[0].exp() - 1.0).abs() < 1e-4, "{line}");
    }
}

#[test]
fn right_side_reference() {
    let out = run(&[
        "eval", "--op", "mrl-int", "--fn", "exp((1-t)^0.5)", "--alpha", "0.5", "--side", "right",
        "--a", "0", "--b", "1", "--ref",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let worst = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(worst < 1e-3, "{worst}");
}

#[test]
fn table_power_integral() {
    let out = run(&["table", "--case", "power-int", "--alpha", "0.5", "--beta", "1.5", "--grid", "513"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,numeric,closed_form,abs_err"));
    assert_eq!(lines.count(), 513);
}

#[test]
fn verify_json_and_subset() {
    let out = run(&["verify", "--suite", "product_rule,cauchy_integer_reduction", "--out", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["passed"] == true));
}

#[test]
fn exit_codes() {
    let usage = ["eval", "--op", "mrl-int", "--fn", "2t", "--alpha", "0.5", "--a", "0", "--b", "1"];
    assert_eq!(code(&run(&usage)), 2);
    let no_alpha = ["eval", "--op", "mrl-int", "--fn", "e", "--a", "0", "--b", "1"];
    assert_eq!(code(&run(&no_alpha)), 2);
    let bad_interval = ["eval", "--op", "mint", "--fn", "e", "--a", "1", "--b", "0"];
    assert_eq!(code(&run(&bad_interval)), 2);
    let not_positive = ["eval", "--op", "mint", "--fn", "t-0.5", "--a", "0", "--b", "1"];
    assert_eq!(code(&run(&not_positive)), 3);
    let no_closed_form = ["eval", "--op", "mcaputo", "--fn", "exp(sin(t))", "--alpha", "0.5", "--a", "0", "--b", "1", "--ref"];
    assert_eq!(code(&run(&no_closed_form)), 4);
    assert_eq!(code(&run(&["verify", "--suite", "nosuch"])), 2);
    assert_eq!(code(&run(&["eval", "--op", "nosuch", "--fn", "e", "--a", "0", "--b", "1"])), 2);
}
