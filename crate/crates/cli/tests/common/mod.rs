//! Helpers shared by the CLI integration and acceptance suites.
#![allow(dead_code)] // each test target uses a different subset

use std::path::PathBuf;
use std::process::Output;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("missing golden {name}: {e}"))
}

pub fn run(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_puresep"))
        .args(args)
        .output()
        .expect("failed to spawn puresep binary")
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is valid utf-8")
}

pub fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is valid utf-8")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

/// Runs the binary and checks both the exit code and that stdout matches the
/// named golden file byte for byte.
pub fn assert_golden(args: &[&str], expected_code: i32, golden_name: &str) {
    let out = run(args);
    assert_eq!(
        exit_code(&out),
        expected_code,
        "args {args:?}: stderr: {}",
        stderr_of(&out)
    );
    let got = stdout_of(&out);
    let want = golden(golden_name);
    assert_eq!(got, want, "stdout mismatch for {args:?} vs {golden_name}");
}
