#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary from the fixtures directory so file names stay relative.
pub fn parikh(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_parikh")).args(args).current_dir(fixtures()).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Replaces timings, the only nondeterministic part of text reports.
pub fn normalize_text(text: &str) -> String {
    text.lines()
        .map(|l| if l.starts_with("time: ") && l.ends_with(" ms") { "time: <elapsed> ms" } else { l })
        .map(|l| format!("{l}\n"))
        .collect()
}

pub fn normalize_json(text: &str) -> String {
    let mut value: serde_json::Value = serde_json::from_str(text).expect("valid JSON");
    if let Some(obj) = value.as_object_mut() {
        obj.remove("elapsed_ms");
    }
    serde_json::to_string_pretty(&value).expect("serialises") + "\n"
}

pub fn schema() -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema is JSON")
}
