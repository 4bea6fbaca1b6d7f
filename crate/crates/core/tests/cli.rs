use std::process::{Command, Output};

use serde_json::Value;

fn qchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchar"))
        .args(args)
        .env("QCHAR_THREADS", "2")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = qchar(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn gw_evaluation_and_comparison() {
    let o = qchar(&["gw", "24*<-1> + 168*h"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("24*<-1> + 168*h\nrank 360\n"));
    let v = json(&["--format", "json", "gw", "<-2,-6>", "--", "-3 + <3>"]);
    assert_eq!(v["gw_equal"], false);
    assert_eq!(v["witt_equal"], true);
    let v = json(&["gw", "--backend", "fp:7", "--format", "json", "<1,-1>", "h"]);
    assert_eq!(v["gw_equal"], true);
}

#[test]
fn syntax_errors_exit_nonzero() {
    let o = qchar(&["borel", "--bundle", "U1*"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 3"));
    assert_eq!(
        qchar(&["gw", "1", "--backend", "fp:3"]).status.code(),
        Some(2)
    );
    assert_eq!(qchar(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn borel_json_shape() {
    let v = json(&[
        "borel",
        "--bundle",
        "U1*U2*U3",
        "--ambient",
        "HP(5)^3",
        "--channel",
        "chow",
        "--format",
        "json",
    ]);
    assert_eq!(
        v["ambient"],
        serde_json::json!([["u1", 5], ["u2", 5], ["u3", 5]])
    );
    let b3 = v["classes"]["3"].as_array().unwrap();
    assert!(b3
        .iter()
        .any(|t| t["e"] == serde_json::json!([1, 1, 1]) && t["c"] == 40));
    let o = qchar(&["borel", "--bundle", "U1*U2*U3", "--max-degree", "3"]);
    assert!(stdout(&o).contains("(8*<-1> + 16*h)*u1*u2*u3"));
    let o = qchar(&[
        "borel",
        "--bundle",
        "Sym3(U1)",
        "--channel",
        "witt",
        "--format",
        "latex",
    ]);
    assert!(stdout(&o).contains("\\langle 3\\rangle"));
}

#[test]
fn omega_psi_chi_bo() {
    let v = json(&["omega", "--n", "2", "--format", "json"]);
    assert_eq!(
        v["value"]["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["n"].as_i64().unwrap())
            .sum::<i64>(),
        1680
    );
    let o = qchar(&["omega", "--n", "3", "--channel", "witt"]);
    assert_eq!(stdout(&o).trim(), "-80");
    let v = json(&["psi", "--n", "1", "--format", "json"]);
    assert_eq!(v["localized"]["rank"], "360");
    assert_eq!(v["localized"]["sigs"]["P0"], "-24");
    let o = qchar(&["chi", "--n", "3", "--bundle", "U1", "--channel", "chow"]);
    assert_eq!(stdout(&o).trim(), "u1^3");
    let v = json(&[
        "bo",
        "--bundle",
        "(U1-H)*(U2-H)*U3",
        "--ambient",
        "HP(6)^3",
        "--max-degree",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(v["square_ok"], true);
    assert!(v["B"]["2"].as_array().unwrap().is_empty());
    assert!(v["B"]["6"].is_array() && v["ch"]["6"].is_array());
}

#[test]
fn verify_suites() {
    let o = qchar(&["verify", "borelclasses"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(),
        4
    );
    let v = json(&["verify", "all", "--format", "json"]);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert!(checks.len() > 100);
}
