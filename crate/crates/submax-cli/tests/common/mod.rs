//! Helpers shared by the CLI integration tests. Each test crate compiles its
//! own copy, so everything here is small and allocation-light.
#![allow(dead_code)]

use std::process::{Command, Output};

use serde_json::Value;

/// Run the built `submax` binary with the given arguments.
pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_submax"))
        .args(args)
        .output()
        .expect("binary spawns")
}

pub fn instance(name: &str) -> String {
    format!(
        "{}/../../instances/{name}",
        env!("CARGO_MANIFEST_DIR")
    )
}

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

pub fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

/// The document with its `meta` block (wall time) removed, for comparisons
/// that must ignore timing.
pub fn without_meta(out: &Output) -> Value {
    let mut doc = json(out);
    doc.as_object_mut().expect("report is an object").remove("meta");
    doc
}

/// Everything printed before the `meta` block. `meta` is the last field of
/// every report, so this prefix is the entire determinism surface.
pub fn before_meta(out: &Output) -> String {
    let text = stdout(out);
    let (prefix, _) = text
        .split_once("\"meta\"")
        .expect("report carries a meta block");
    prefix.to_string()
}
