use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gcot::{DocumentReport, Status};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn gcot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcot"))
        .args(args)
        .output()
        .expect("run gcot")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn broken_document_reports_its_obstruction() {
    let out = gcot(&["run", arg(&fixture("broken_master.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("{theta,theta}"), "{text}");
}

#[test]
fn json_output_and_out_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let out = gcot(&[
        "run",
        arg(&fixture("so3_master.json")),
        "--format",
        "json",
        "--out",
        arg(&file),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let printed: DocumentReport = serde_json::from_slice(&out.stdout).unwrap();
    let written: DocumentReport =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(printed, written);
    assert_eq!(printed.status, Status::Ok);
    assert_eq!(printed.passed_cases(), 1);
}

#[test]
fn seed_flag_overrides_the_document() {
    let doc = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/twist.toml");
    let run = |seed: &str| {
        let out = gcot(&["run", arg(&doc), "--format", "json", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_slice::<DocumentReport>(&out.stdout).unwrap()
    };
    let (a, b, c) = (run("41"), run("41"), run("42"));
    assert_eq!(a, b);
    assert_eq!(a.seed, 41);
    assert_ne!(a.cases, c.cases);
}

#[test]
fn corpus_with_an_unreadable_document_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("so3_master.json"), dir.path().join("a.json")).unwrap();
    std::fs::copy(fixture("malformed.json"), dir.path().join("b.json")).unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let out = gcot(&["corpus", arg(dir.path()), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("2 documents: 1 ok, 0 failed, 1 errors"),
        "{text}"
    );
}

#[test]
fn unknown_schema_version_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("old.json");
    std::fs::write(
        &file,
        r#"{"schema": "gcot/0", "kind": "twist", "payload": {}}"#,
    )
    .unwrap();
    let out = gcot(&["run", arg(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("unsupported schema"));
}
