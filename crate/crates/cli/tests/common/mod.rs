#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const GOLDEN_CHANNELS: [&str; 6] = [
    "unitary",
    "pin",
    "transpose",
    "equatorial_projection",
    "bit_flip",
    "phase_flip",
];

/// Flags every golden run uses.
pub const GOLDEN_FLAGS: [&str; 6] = ["--output", "machine", "--seed", "7", "--samples", "25"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.json"))
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("analyze_{name}.json"))
}

/// The binary with a clean environment for the tolerance variable.
pub fn chanforms() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chanforms"));
    cmd.env_remove("CHANFORMS_TOL");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    chanforms().args(args).output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

pub fn analyze_golden_output(name: &str) -> Output {
    let path = fixture(name);
    let mut args = vec!["analyze", path.to_str().unwrap()];
    args.extend(GOLDEN_FLAGS);
    run(&args)
}

/// Compares against the stored golden file; `UPDATE_GOLDEN=1` rewrites it instead.
/// Returns a description of the mismatch, if any.
pub fn check_golden(name: &str) -> Result<(), String> {
    let out = analyze_golden_output(name);
    let actual = stdout(&out);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()))?;
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{name}: output differs from {}", path.display()))
    }
}
