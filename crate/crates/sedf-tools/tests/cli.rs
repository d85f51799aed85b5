//! End-to-end checks of the `sedf-tools` binary: output formats, stdin
//! handling, and exit codes.

use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sedf-tools"));
    cmd.args(args);
    cmd.stdin(Stdio::piped());
    cmd.stdout(Stdio::piped());
    cmd.stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn sedf-tools");
    if let Some(text) = stdin {
        use std::io::Write;
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("wait for sedf-tools")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn enumerate_json_reports_classes() {
    let out = run(
        &["enumerate", "--a", "4", "--format", "json", "--no-timing"],
        None,
    );
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["a"], 4);
    assert_eq!(value["count"], 2);
    assert_eq!(value["classes"].as_array().unwrap().len(), 2);
    // Every reported canonical form must re-verify as an SEDF.
    for class in value["classes"].as_array().unwrap() {
        let sedf: sedf_tools::sedf::Sedf =
            serde_json::from_value(class["canonical"].clone()).unwrap();
        assert!(sedf.is_valid());
    }
}

#[test]
fn blowup_then_classify_round_trip() {
    let out = run(
        &["blowup", "--sequence", "(2,2,2,2)", "--format", "json"],
        None,
    );
    assert!(out.status.success());
    let valuation_json = stdout(&out);
    let valuation: sedf_tools::valuation::Valuation =
        serde_json::from_str(&valuation_json).unwrap();
    assert!(valuation.is_valid());
    assert_eq!((valuation.a(), valuation.b()), (4, 4));

    let out = run(&["classify"], Some(&valuation_json));
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("valid"), "classify output: {text}");
    assert!(text.contains("(2,2,2,2)"), "classify output: {text}");
}

#[test]
fn verify_accepts_both_object_kinds() {
    let out = run(&["verify"], Some(r#"{"n":10,"A":[0,1],"B":[2,4]}"#));
    assert!(out.status.success());
    assert!(stdout(&out).contains("valid"));

    let out = run(
        &["verify"],
        Some(r#"{"a":2,"b":2,"small":[0,1],"large":[2,4]}"#),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("valid"));
}

#[test]
fn dihedral_equivalence_transcript() {
    let out = run(&["dihedral", "--k", "5", "--check-equivalence"], None);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ab^2"), "transcript: {text}");
    assert!(text.contains("equivalent"), "transcript: {text}");
    assert!(!text.contains("inequivalent"), "transcript: {text}");
}

#[test]
fn exit_codes_distinguish_usage_and_input_errors() {
    // Unknown flag: usage error, exit 2 with clap diagnostics on stderr.
    let out = run(&["enumerate", "--bogus"], None);
    assert_eq!(out.status.code(), Some(2));

    // Malformed stdin payload: input error, exit 1.
    let out = run(&["verify"], Some("not json"));
    assert_eq!(out.status.code(), Some(1));

    // Well-formed requests succeed.
    let out = run(&["tables", "--which", "table1", "--a-max", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3.1"), "table output: {text}");
    assert!(text.contains("X+1"), "table output: {text}");
}
