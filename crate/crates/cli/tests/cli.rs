//! End-to-end checks of the two binaries via std::process.

use std::process::Command;

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

fn cremona() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cremona"))
}

#[test]
fn run_single_check_json() {
    let out = verify()
        .args(["run", "--filter", "lattice.detA", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["summary"]["pass"], 1);
    assert_eq!(doc["reports"][0]["computed"], "det 186");
}

#[test]
fn list_and_describe() {
    let out = verify().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lattice.detA"));
    assert!(text.contains("orbit.std.s5"));

    let out = verify().args(["describe", "lattice.detA"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Lemma 6.9 proof"));

    let out = verify().args(["describe", "no.such.id"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_filter_is_a_configuration_error() {
    let out = verify()
        .args(["run", "--filter", "no.such.*"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn markdown_run_of_a_group() {
    let out = verify()
        .args(["run", "--filter", "lattice.6*", "--jobs", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| pass |"));
    assert!(text.contains("0 fail"));
}

#[test]
fn cremona_binary_reports_image() {
    let out = cremona()
        .args(["--group", "A5-standard", "--orbit", "x1.s5"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("image cubic:"));
    assert!(text.contains("type A1"));

    // Literal coordinates work too.
    let out = cremona()
        .args(["--group", "A5-standard", "--orbit", "1 : 1 : 1 : -2*z4 : 1"])
        .output()
        .unwrap();
    assert!(out.status.success());

    // A point off the quadric is an error.
    let out = cremona()
        .args(["--group", "A5-standard", "--orbit", "1 : 0 : 0 : 0 : 0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
