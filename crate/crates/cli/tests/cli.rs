// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polarstroke"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], input: &Path) -> Output {
    bin().args(args).arg("-i").arg(input).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tess_quarter_circle_document() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "quarter.path", "M 1 0 K 1 1 0.7071067811865476 0 1");
    let out_path = dir.path().join("out.json");
    let out = bin()
        .args(["tess", "--q", "4", "--width", "0.2", "--join", "round", "--cap", "round", "-i"])
        .arg(&input)
        .arg("-o")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    let links = doc["links"].as_array().unwrap();
    let seg = links.iter().find(|l| l["type"] == "segment").unwrap();
    assert_eq!(seg["quad_count"], 23);
    let caps: Vec<u64> = links.iter().filter(|l| l["type"] != "segment").map(|l| l["quad_count"].as_u64().unwrap()).collect();
    assert_eq!(caps, vec![45, 45]);
    // Strip quads plus one stitch between each pair of links.
    assert_eq!(doc["quads"].as_array().unwrap().len(), 23 + 90 + 2);
    let last = doc["ribs"].as_array().unwrap().iter().map(|r| r["cum_length"].as_f64().unwrap()).fold(0.0, f64::max);
    assert!((last - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
}

#[test]
fn compare_reports_cusp_pivot() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cusp.path", "M 0 0 C 2 2 0 2 2 0");
    let out = run(&["compare", "--q", "4", "--format", "json"], &input);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let row = &rows[0];
    assert!((row["polar_pivot_sweep_deg"].as_f64().unwrap() - 180.0).abs() < 1e-9);
    assert_eq!(row["uniform_pivot_sweep_deg"].as_f64().unwrap(), 0.0);
    let text = run(&["compare", "--q", "4"], &input);
    assert!(String::from_utf8(text.stdout).unwrap().contains("pivot sweep: polar 180.000 deg"));
}

#[test]
fn stats_on_line_has_no_facets() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "line.path", "M 0 0 L 10 0");
    let out = run(&["stats", "--format", "json"], &input);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["facets"]["count"], 0);
    assert_eq!(v["quads"], 1);
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "line.path", "M 0 0 L 10 0");
    let out = run(&["tess", "--format", "svg", "--width", "2"], &input);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("viewBox=\"-2 -3 14 6\""));
    assert_eq!(svg.matches("<polygon").count(), 1);
}

#[test]
fn style_sidecar_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "line.path", "M 0 0 L 10 0");
    let style = write(
        dir.path(),
        "style.json",
        r#"{"width": 0.5, "join": "bevel", "cap": "none", "dash": {"lengths": [1, 1], "offset": 0}}"#,
    );
    let out = bin().args(["dash", "--style"]).arg(&style).arg("-i").arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["width"], 0.5);
    assert_eq!(v["quads"].as_array().unwrap().len(), 5);
    // A flag overrides the sidecar.
    let out = bin().args(["dash", "--width", "2", "--style"]).arg(&style).arg("-i").arg(&input).output().unwrap();
    assert_eq!(json(&out)["params"]["width"], 2.0);
}

#[test]
fn reads_stdin() {
    let mut child = bin()
        .args(["stats", "--format", "json", "-i", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"M 0 0 L 3 4").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ribs"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.path", "M 0 0 L 10");
    let out = run(&["tess"], &bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("byte 10"));

    let line = write(dir.path(), "line.path", "M 0 0 L 10 0");
    assert_eq!(run(&["tess", "--q", "0"], &line).status.code(), Some(2));
    assert_eq!(run(&["tess", "--q", "91"], &line).status.code(), Some(2));
    assert_eq!(run(&["tess", "--width", "-1"], &line).status.code(), Some(2));
    assert_eq!(run(&["tess", "--miter-limit", "0.5"], &line).status.code(), Some(2));
    assert_eq!(run(&["dash"], &line).status.code(), Some(2));
    assert_eq!(run(&["dash", "--dash", "0,0"], &line).status.code(), Some(2));
    assert_eq!(run(&["tess", "--join", "spiky"], &line).status.code(), Some(2));
    assert_eq!(run(&["tess"], &dir.path().join("missing.path")).status.code(), Some(2));
    let style = write(dir.path(), "style.json", r#"{"colour": "red"}"#);
    let out = bin().args(["tess", "--style"]).arg(&style).arg("-i").arg(&line).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["tess", "-i"]).arg(&line).env("POLARSTROKE_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_check_pass_and_violation() {
    let dir = tempfile::tempdir().unwrap();
    let arc = write(dir.path(), "arc.path", "M 0 0 A 3 3 0 0 1 6 0");
    let out = run(&["oracle-check", "--width", "1", "--join", "round", "--cap", "round", "--samples", "2000"], &arc);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    // Thin stroke on the nearly straight arms of a hyperbola: 4 degree
    // steps leave chords far from the offset curve.
    let hyp = write(dir.path(), "hyp.path", "M 0 0 K 2 2 -2 4 0");
    let out = run(
        &["oracle-check", "--width", "0.3", "--join", "round", "--cap", "round", "--samples", "3000", "--format", "json"],
        &hyp,
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["seed"], 1);
    assert_eq!(v["pass"], false);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p.path", "M 0 0 C 1 3 3 -3 4 0 L 6 2 Q 7 4 5 5 Z");
    let args = ["tess", "--join", "round", "--cap", "round", "--width", "0.4"];
    let a = bin().args(args).arg("-i").arg(&input).env("POLARSTROKE_THREADS", "1").output().unwrap();
    let b = bin().args(args).arg("-i").arg(&input).env("POLARSTROKE_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
