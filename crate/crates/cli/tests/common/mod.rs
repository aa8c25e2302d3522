//! Shared helpers for the CLI test suites.
#![allow(dead_code)] // not every suite uses every helper

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cuborder_core::Cube;

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_cuborder")
}

/// Writes the cube's fact table and an explicit schema document into `dir`.
pub fn write_fixture(dir: &Path, cube: &Cube) -> (PathBuf, PathBuf) {
    let facts = dir.join("facts.csv");
    let schema = dir.join("schema.toml");
    let mut file = std::fs::File::create(&facts).expect("create facts");
    cube.write_fact_table(&mut file).expect("write facts");
    std::fs::write(&schema, cube.schema().to_doc().to_toml_string()).expect("write schema");
    (facts, schema)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("spawn cuborder")
}

pub fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command failed: {:?}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

/// Extracts `key = value` from command stdout.
pub fn stdout_value(stdout: &str, key: &str) -> f64 {
    let prefix = format!("{key} = ");
    stdout
        .lines()
        .find_map(|line| line.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key}` line in output:\n{stdout}"))
        .trim()
        .parse()
        .expect("numeric value")
}

/// Parses the sweep CSV into (rate, sparsity, ih_initial, ih_arranged, gain).
pub fn parse_sweep(text: &str) -> Vec<(f64, f64, f64, f64, Option<f64>)> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("rate,sparsity,ih_initial,ih_arranged,gain"),
        "sweep header"
    );
    lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 5, "row {line:?}");
            (
                fields[0].parse().unwrap(),
                fields[1].parse().unwrap(),
                fields[2].parse().unwrap(),
                fields[3].parse().unwrap(),
                if fields[4].is_empty() {
                    None
                } else {
                    Some(fields[4].parse().unwrap())
                },
            )
        })
        .collect()
}

/// Parses a plain-text P1 bitmap into (rows, cols, dark cells).
pub fn parse_pbm(text: &str) -> (usize, usize, Vec<(usize, usize)>) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("P1"), "magic");
    let dims: Vec<usize> = lines
        .next()
        .expect("dimensions line")
        .split_whitespace()
        .map(|v| v.parse().unwrap())
        .collect();
    let (cols, rows) = (dims[0], dims[1]);
    let mut dark = Vec::new();
    for (r, line) in lines.enumerate() {
        for (c, token) in line.split_whitespace().enumerate() {
            if token == "1" {
                dark.push((r, c));
            }
        }
    }
    (rows, cols, dark)
}
