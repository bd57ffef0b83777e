//! Shared helpers for the CLI test targets.

use std::path::PathBuf;
use std::process::Command;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
}

/// Splits a suite line on whitespace, keeping double-quoted groups together.
pub fn split_args(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            c if c.is_whitespace() && !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            c => {
                cur.push(c);
                any = true;
            }
        }
    }
    if any {
        out.push(cur);
    }
    out
}

pub fn suite() -> Vec<Vec<String>> {
    let dir = data_dir();
    let text = std::fs::read_to_string(dir.join("suite.txt")).expect("suite file");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| split_args(&l.replace("{data}", &dir.display().to_string())))
        .collect()
}

/// Runs the built binary, returning (status, stdout, stderr).
pub fn run_binary(args: &[String], scalar_mode: Option<&str>) -> (i32, Vec<u8>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_braidforge"));
    cmd.args(args);
    match scalar_mode {
        Some(m) => cmd.env("BRAIDFORGE_SCALAR_MODE", m),
        None => cmd.env_remove("BRAIDFORGE_SCALAR_MODE"),
    };
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}
