//! End-to-end tests of the command-line surface: output format, exit codes,
//! sweep CSV structure and the verification report.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ricebounds"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ricebounds")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_rice_line_format() {
    let out = run(&["eval", "rice", "--k", "0", "--x", "1", "--method", "quadrature"]);
    assert!(out.status.success());
    let line = stdout(&out);
    // 1 - e^-1 printed with 17 significant figures
    assert!(
        line.starts_with("rice quadrature value=6.3212055882855767e-1 est_error="),
        "unexpected line: {line}"
    );
}

#[test]
fn eval_toronto_closed_form_matches_oracle() {
    let closed = run(&[
        "eval", "toronto", "--m", "1", "--n", "0.5", "--r", "1", "--B", "2", "--method",
        "closed-form",
    ]);
    let quad = run(&[
        "eval", "toronto", "--m", "1", "--n", "0.5", "--r", "1", "--B", "2", "--method",
        "quadrature",
    ]);
    assert!(closed.status.success() && quad.status.success());
    let get = |s: &str| -> f64 {
        s.split("value=")
            .nth(1)
            .unwrap()
            .split_whitespace()
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    let c = get(&stdout(&closed));
    let q = get(&stdout(&quad));
    assert!((c - q).abs() < 1e-10, "closed {c} vs quad {q}");
}

#[test]
fn eval_ilhi_closed_form() {
    let out = run(&[
        "eval", "ilhi", "--m", "1", "--n", "0.5", "--a", "2", "--z", "3", "--method",
        "closed-form",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("value=2.4608176332032"), "{}", stdout(&out));
}

#[test]
fn usage_errors_exit_2() {
    // unknown method
    let out = run(&["eval", "rice", "--k", "0.5", "--x", "1", "--method", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    // precondition violation named in the diagnostic
    let out = run(&["eval", "rice", "--k", "1.5", "--x", "1", "--method", "quadrature"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k must lie in [0, 1]"));
    // clap-level parse failure
    let out = run(&["eval", "rice", "--k", "0.5", "--method", "quadrature"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_errors_exit_3() {
    let out = run(&[
        "eval", "ilhi", "--m", "1", "--n", "0", "--a", "0", "--z", "800", "--method",
        "quadrature",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("overflow"));
}

#[test]
fn sweep_writes_expected_csv() {
    let path = std::env::temp_dir().join("ricebounds_cli_sweep.csv");
    let out = bin()
        .args([
            "sweep",
            "--function",
            "rice",
            "--fix",
            "k=0.5",
            "--vary",
            "x:1:2:3",
            "--methods",
            "quadrature,bound-upper,bound-lower",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,quadrature,bound-upper,bound-lower");
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 4));
    assert!(!text.contains('\r'));
    let _ = std::fs::remove_file(path);
}

#[test]
fn sweep_rejects_bad_specs() {
    // varying parameter also fixed
    let out = run(&[
        "sweep", "--function", "rice", "--fix", "x=1", "--vary", "x:1:2:3", "--methods",
        "quadrature", "--out", "/tmp/never.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // lo >= hi
    let out = run(&[
        "sweep", "--function", "rice", "--fix", "k=0.5", "--vary", "x:2:1:3", "--methods",
        "quadrature", "--out", "/tmp/never.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // steps < 2
    let out = run(&[
        "sweep", "--function", "rice", "--fix", "k=0.5", "--vary", "x:1:2:1", "--methods",
        "quadrature", "--out", "/tmp/never.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_records_failures_as_empty_cells() {
    // the toronto closed form has no finite form at n = 0 (integer), so the
    // closed-form column stays empty while quadrature fills in
    let path = std::env::temp_dir().join("ricebounds_cli_sweep_fail.csv");
    let out = bin()
        .args([
            "sweep",
            "--function",
            "toronto",
            "--fix",
            "m=1",
            "--fix",
            "n=0",
            "--fix",
            "B=2",
            "--vary",
            "r:0.5:1:2",
            "--methods",
            "quadrature,closed-form",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!out.stderr.is_empty(), "expected warnings on stderr");
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(1) {
        assert!(line.ends_with(','), "closed-form cell should be empty: {line}");
    }
    let _ = std::fs::remove_file(path);
}

#[test]
fn verify_passes_at_default_tolerance() {
    let out = run(&["verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_is_faster_and_still_green_when_loosened() {
    let out = run(&["--tol", "1e-4", "verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn env_var_sets_tolerance() {
    let out = bin()
        .env("RICEBOUNDS_TOL", "1e-6")
        .args(["eval", "rice", "--k", "0.5", "--x", "5", "--method", "quadrature"])
        .output()
        .unwrap();
    assert!(out.status.success());
    // flag beats the environment
    let out = bin()
        .env("RICEBOUNDS_TOL", "not-a-number")
        .args(["eval", "rice", "--k", "0.5", "--x", "5", "--method", "quadrature"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn preset_list_names_all_figures() {
    let out = run(&["preset", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["figure1", "figure2", "figure3", "figure4", "figure5", "figure6"] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn preset_figure3_default_and_override() {
    let dir = std::env::temp_dir();
    let p80 = dir.join("ricebounds_cli_fig3_80.csv");
    let p40 = dir.join("ricebounds_cli_fig3_40.csv");
    let out = bin()
        .args(["preset", "run", "figure3", "--steps", "3", "--out"])
        .arg(&p80)
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin()
        .args(["preset", "run", "figure3", "--steps", "3", "--x", "40", "--out"])
        .arg(&p40)
        .output()
        .unwrap();
    assert!(out.status.success());
    let a = std::fs::read_to_string(&p80).unwrap();
    let b = std::fs::read_to_string(&p40).unwrap();
    assert_ne!(a, b, "the --x override must change the data");
    assert!(a.lines().next().unwrap().starts_with("k,"));
    let _ = std::fs::remove_file(p80);
    let _ = std::fs::remove_file(p40);
}
