//! Exit-code and determinism contract of the command-line driver.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hocenter"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[test]
fn validate_succeeds_on_shipped_fixture() {
    let out = bin().arg(fixture("band_two.json")).arg("validate").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schemaVersion"], 1);
    assert_eq!(doc["categories"]["bandTwo"]["valid"], true);
}

#[test]
fn malformed_fixture_exits_2() {
    let dir = std::env::temp_dir().join("hocenter-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{ "categories": { "bad": { "discreteMonoid": {
            "table": [[0,1,2],[1,0,2],[2,2,0]], "identity": 0 } } } }"#,
    )
    .unwrap();
    let out = bin().arg(&path).arg("validate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("associative"));
}

#[test]
fn tiny_budget_exits_3() {
    let out = bin()
        .arg(fixture("flagship.json"))
        .arg("--budget")
        .arg("1")
        .arg("centers")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reports_are_byte_identical_across_thread_counts() {
    let run = |threads: &str| {
        let out = bin()
            .arg(fixture("suspensions.json"))
            .arg("--threads")
            .arg(threads)
            .arg("report")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}
