//! End-to-end checks of the command-line interface: subcommands, exit codes,
//! and report determinism.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_cubicline"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code(),
    )
}

#[test]
fn classify_table_row_3() {
    let (stdout, _, code) = run(&["classify", "x0*x1*x2", "x0+x1+x2"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("stable (row 3)"), "{stdout}");
}

#[test]
fn mu_with_explicit_weights() {
    let (stdout, _, code) = run(&["mu", "x0^2*x2+x1^3", "x2", "--r", "3,1,-4"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "mu = -1");
}

#[test]
fn group_order() {
    let (stdout, _, code) = run(&["hesse", "group", "--order"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "216");
}

#[test]
fn parse_error_exit_code() {
    let (_, stderr, code) = run(&["classify", "x0^2", "x1"]);
    assert_eq!(code, Some(2), "{stderr}");
}

#[test]
fn wrong_stratum_exit_code() {
    // normal-form on a stable row-1 pair: internal verification failure
    // domain (exit 4).
    let (_, _, code) = run(&["normal-form", "x0^3+x1^3+x2^3", "x0"]);
    assert_eq!(code, Some(4));
}

#[test]
fn json_report_is_deterministic() {
    let args = ["classify", "x0*(x0*x2+x1^2)", "x2", "--json"];
    let (a, _, code_a) = run(&args);
    let (b, _, code_b) = run(&args);
    assert_eq!(code_a, Some(0));
    assert_eq!(code_b, Some(0));
    assert_eq!(a, b);
    let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["status"], "strictly-semistable");
    assert_eq!(parsed["row"], 7);
}

#[test]
fn atlas_reports_deterministic_per_seed() {
    let args = [
        "atlas",
        "verify-psi",
        "--chart",
        "2",
        "--samples",
        "4",
        "--seed",
        "9",
        "--json",
    ];
    let (a, _, code) = run(&args);
    assert_eq!(code, Some(0));
    let (b, _, _) = run(&args);
    assert_eq!(a, b);
}

#[test]
fn input_file_with_tower_header() {
    let dir = std::env::temp_dir().join("cubicline-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pairs.txt");
    std::fs::write(
        &path,
        "# sample input\nx0*x1*x2; x0+x1+x2\nx0*(x0*x2+x1^2); x2\n",
    )
    .unwrap();
    let (stdout, _, code) = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("row 3"));
    assert!(stdout.contains("row 7"));
}

#[test]
fn family_limits() {
    let (stdout, _, code) = run(&["family", "limits", "--family", "ga-z5", "--json"]);
    assert_eq!(code, Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(parsed["generic_row"], 5);
}
