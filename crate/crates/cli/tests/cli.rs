use std::process::Command as Process;

use clap::Parser;
use serde_json::Value;

use mgbar_nef_cli::{run, Cli, CommandResult, Format, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn exec(args: &[&str]) -> CommandResult {
    let mut argv = vec!["mgbar-nef"];
    argv.extend_from_slice(args);
    run(&Cli::try_parse_from(argv).expect("arguments parse"))
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_mgbar-nef"))
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float in payload: {n}"),
        Value::Array(xs) => xs.iter().for_each(assert_no_floats),
        Value::Object(m) => m.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn fcurves_genus_three() {
    let r = exec(&["fcurves", "--genus", "3", "--format", "json"]);
    assert_eq!(r.exit, EXIT_OK);
    assert_eq!(r.payload["curves"].as_array().unwrap().len(), 6);
    let first = &r.payload["curves"][0];
    assert_eq!(first["family"], "C1");
    assert_eq!(first["vector"], serde_json::json!(["1/12", "1", "-1/12"]));

    let r = exec(&["fcurves", "--genus", "3", "--classes"]);
    assert_eq!(r.payload["count"], 4);
}

#[test]
fn fcurves_genus_four_has_the_unique_c6() {
    let r = exec(&["fcurves", "--genus", "4", "--format", "json"]);
    let tags: Vec<(String, Value)> = r.payload["curves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["family"].as_str().unwrap().to_string(), c["indices"].clone()))
        .collect();
    assert!(tags.contains(&("C6".to_string(), serde_json::json!([1, 1, 1, 1]))));
}

#[test]
fn genus_guard() {
    let r = exec(&["fcurves", "--genus", "2"]);
    assert_eq!(r.exit, EXIT_USAGE);
    assert!(r.payload["error"].as_str().unwrap().contains("genus 2"));
    assert_eq!(exec(&["table"]).exit, EXIT_USAGE);
}

#[test]
fn table_rows() {
    let r = exec(&["table", "--genus", "10", "--format", "json"]);
    assert_eq!(r.exit, EXIT_OK);
    let rows = r.payload["rows"].as_array().unwrap();
    let row = |family: &str| rows.iter().find(|r| r["family"] == family).unwrap().clone();
    let cols = |family: &str| {
        let r = row(family);
        (
            r["formula"].as_str().unwrap().to_string(),
            r["lambda"].as_str().unwrap().to_string(),
            r["twelve_lambda_minus_delta0"].as_str().unwrap().to_string(),
        )
    };
    assert_eq!(
        cols("C1"),
        ("a/12 \u{2212} b0 + b1/12".into(), "1/12".into(), "0".into())
    );
    assert_eq!(cols("C2"), ("b0".into(), "0".into(), "1".into()));
    assert_eq!(cols("C4"), ("2b0 \u{2212} b_{i+1}".into(), "0".into(), "2".into()));
    assert_eq!(r.payload["checks"][0]["pass"], true);
}

#[test]
fn table_columns_are_genus_independent() {
    let columns = |g: u32| -> Vec<(String, String)> {
        let r = exec(&["table", "--genus", &g.to_string(), "--format", "json"]);
        r.payload["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| {
                (
                    row["lambda"].as_str().unwrap().to_string(),
                    row["twelve_lambda_minus_delta0"].as_str().unwrap().to_string(),
                )
            })
            .collect()
    };
    let reference = columns(3);
    for g in 4..=15 {
        assert_eq!(columns(g), reference, "genus {g}");
        let text = exec(&["table", "--genus", &g.to_string()]).human;
        assert_eq!(text, exec(&["table", "--genus", "3"]).human);
    }
}

#[test]
fn table_latex() {
    let r = exec(&["table", "--genus", "6", "--format", "latex"]);
    assert_eq!(r.exit, EXIT_OK);
    let tex = r.render(Format::Latex);
    assert!(tex.starts_with("\\begin{tabular}"));
    assert!(tex.contains("$C_1$ & $\\frac{a}{12}-b_0+\\frac{b_1}{12}$ & $\\frac{1}{12}$ & $0$ \\\\"));
    assert!(tex.contains("$C^i_{4}$ & $2b_0-b_{i+1}$ & $0$ & $2$ \\\\"));
    assert_eq!(tex.matches("\\hline").count(), 8);
    assert_eq!(
        exec(&["check", "--genus", "6", "--divisor", "L", "--format", "latex"]).exit,
        EXIT_USAGE
    );
}

#[test]
fn check_examples() {
    let r = exec(&["check", "--genus", "8", "--divisor", "13*L - 1*d0"]);
    assert_eq!(r.exit, EXIT_OK);
    assert_eq!(r.payload["fnef"], true);
    assert_eq!(r.payload["class"]["class"], "InteriorOfF");
    assert_eq!(r.payload["semiample"]["status"], "semi_ample");

    let r = exec(&["check", "--genus", "8", "--divisor", "11*L - 1*d0"]);
    assert_eq!(r.exit, EXIT_CHECK_FAILED);
    assert_eq!(r.payload["fnef"], false);
    assert_eq!(r.payload["witness"]["curve"]["family"], "C1");
    assert_eq!(r.payload["witness"]["value"], "-1/12");

    let r = exec(&["check", "--genus", "8", "--divisor", "0"]);
    assert_eq!(r.exit, EXIT_OK);
    assert_eq!(r.payload["class"]["class"], "Origin");
}

#[test]
fn check_parse_error_reports_position() {
    let r = exec(&["check", "--genus", "8", "--divisor", "13*L - 2*q0"]);
    assert_eq!(r.exit, EXIT_USAGE);
    assert_eq!(r.payload["position"], 9);
}

#[test]
fn certify_and_rays() {
    for g in [3u32, 6, 9] {
        let r = exec(&["certify", "--genus", &g.to_string(), "--format", "json"]);
        assert_eq!(r.exit, EXIT_OK, "genus {g}");
        assert!(r.payload["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"] == true));
        assert_eq!(r.payload["face_dim"], 2);
    }
    let r = exec(&["rays", "--genus", "3", "--format", "json"]);
    assert_eq!(r.exit, EXIT_OK);
    let rays: Vec<String> = r.payload["rays"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["divisor"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(rays, ["1*L", "10*L - 1*d0 - 2*d1", "12*L - 1*d0"]);
    assert_eq!(exec(&["rays", "--genus", "14"]).exit, EXIT_USAGE);
}

#[test]
fn pullback_and_bpf() {
    let r = exec(&[
        "pullback",
        "--genus",
        "6",
        "--model",
        "perfect",
        "--divisor",
        "12*M - D",
    ]);
    assert_eq!(r.exit, EXIT_OK);
    assert_eq!(r.payload["pullback"]["expansion"], "12*L - 1*d0");
    assert_eq!(r.payload["pullback_rank"], 2);
    let r = exec(&["pullback", "--genus", "6", "--model", "satake", "--divisor", "7*M"]);
    assert_eq!(r.payload["pullback"]["expansion"], "7*L");
    assert_eq!(
        exec(&["pullback", "--genus", "6", "--model", "partial", "--divisor", "M"]).exit,
        EXIT_USAGE
    );
    assert_eq!(
        exec(&["pullback", "--genus", "6", "--model", "satake", "--divisor", "M - D"]).exit,
        EXIT_USAGE
    );

    let r = exec(&["bpf", "--genus", "7", "--format", "json"]);
    assert_eq!(r.exit, EXIT_OK);
    assert_eq!(r.payload["points"], 125);
    assert_eq!(r.payload["deviations"].as_array().unwrap().len(), 0);
    assert_eq!(r.payload["passed"], true);
}

#[test]
fn payloads_round_trip_and_have_no_floats() {
    let cases: &[&[&str]] = &[
        &["fcurves", "--genus", "7"],
        &["fcurves", "--genus", "7", "--classes"],
        &["table", "--genus", "7"],
        &["check", "--genus", "7", "--divisor", "25/2 L - d0"],
        &["certify", "--genus", "7"],
        &["rays", "--genus", "4"],
        &["pullback", "--genus", "7", "--model", "perfect", "--divisor", "13M - D"],
        &["bpf", "--genus", "7", "--m-max", "2"],
        &["check", "--genus", "7", "--divisor", "L +"],
    ];
    for args in cases {
        let r = exec(args);
        let text = r.render(Format::Json);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r.payload, "{args:?}");
        assert_no_floats(&r.payload);
    }
}

#[test]
fn exit_status_matches_checks() {
    for args in [
        &["check", "--genus", "5", "--divisor", "L"][..],
        &["check", "--genus", "5", "--divisor", "L - d1"][..],
        &["certify", "--genus", "5"][..],
        &["rays", "--genus", "5"][..],
        &["bpf", "--genus", "5"][..],
    ] {
        let r = exec(args);
        let checks = r.payload["checks"]
            .as_array()
            .map(|cs| cs.iter().all(|c| c["pass"] == true))
            .unwrap_or_else(|| r.payload["passed"] == true);
        assert_eq!(r.exit == EXIT_OK, checks, "{args:?}");
    }
}

#[test]
fn binary_exit_codes_and_output_file() {
    let ok = binary()
        .args(["check", "--genus", "8", "--divisor", "13*L - d0"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = binary()
        .args(["check", "--genus", "8", "--divisor", "11*L - d0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = binary().args(["check", "--genus", "8"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let genus = binary().args(["fcurves", "--genus", "2"]).output().unwrap();
    assert_eq!(genus.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&genus.stderr).contains("genus 2"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let st = binary()
        .args(["table", "--genus", "5", "--format", "json", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(st.success());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, exec(&["table", "--genus", "5", "--format", "json"]).payload);
}
