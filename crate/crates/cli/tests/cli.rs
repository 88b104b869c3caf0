use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bps_cli::commands::{execute, Command as Sub};
use bps_cli::{emit_table, parse_series_str, run_pipeline, Format, SeriesData};
use bps_core::bps::{local_bps_from_gw, relative_gw_from_bps, BpsVector, GeometryParams, Kind};
use bps_core::correspondence::local_to_relative_bps;
use bps_core::ExactRational;
use proptest::prelude::*;

fn sample() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/local_p2.toml")
}

fn bps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bps")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bps(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn dt_table_csv() {
    let out = stdout(&["dt", "--loops", "2", "--upto", "5", "--format", "csv"]);
    assert_eq!(out, "m,n1,n2,n3,n4,n5\n0,1,0,0,0,0\n1,1,0,0,0,0\n2,1,1,1,2,5\n");
}

#[test]
fn dt_from_euler_file() {
    let dir = tempfile::tempdir().unwrap();
    // Catalan numbers: Euler characteristics for the 2-loop quiver
    let f = write(&dir, "e.toml", "kind = \"euler\"\nm = 2\ncoeffs = [\"1\", \"1\", \"2\", \"5\", \"14\", \"42\"]\n");
    assert_eq!(stdout(&["dt", "--input", &f, "--format", "csv"]), "m,n1,n2,n3,n4,n5\n2,1,1,1,2,5\n");
}

#[test]
fn pipeline_on_sample() {
    let out = stdout(&["pipeline", "--input", sample().to_str().unwrap()]);
    let expected = "\
w = 3
primitive = true
order = 3
local_gw = [\"3\", \"-45/8\", \"244/9\"]
local_bps = [\"3\", \"-6\", \"27\"]
relative_bps = [\"9\", \"27\", \"234\"]
relative_gw = [\"9\", \"135/4\", \"244\"]

[integrality.local_bps]
pass = true
non_integral = []

[integrality.relative_bps]
pass = true
non_integral = []
";
    assert_eq!(out, expected);
    let csv = stdout(&["pipeline", "--input", sample().to_str().unwrap(), "--format", "csv", "--upto", "2"]);
    assert_eq!(csv, "d,local_gw,local_bps,relative_bps,relative_gw\n1,3,3,9,9\n2,-45/8,-6,27,135/4\n");
}

#[test]
fn files_chain_between_commands() {
    let dir = tempfile::tempdir().unwrap();
    let local = dir.path().join("local_bps.toml");
    let rel = dir.path().join("rel_bps.toml");
    let rel_gw = dir.path().join("rel_gw.toml");
    let sample = sample();
    stdout(&["local-bps", "--input", sample.to_str().unwrap(), "--output", local.to_str().unwrap()]);
    stdout(&["transform", "--input", local.to_str().unwrap(), "--direction", "local-to-relative", "--output", rel.to_str().unwrap()]);
    stdout(&["relative-bps", "--inverse", "--input", rel.to_str().unwrap(), "--output", rel_gw.to_str().unwrap()]);
    let read = |p: &Path| std::fs::read_to_string(p).unwrap();
    assert!(read(&local).contains("coeffs = [\"3\", \"-6\", \"27\"]"));
    assert!(read(&rel).contains("kind = \"relative_bps\""));
    assert!(read(&rel_gw).contains("coeffs = [\"9\", \"135/4\", \"244\"]"));

    let back = stdout(&["relative-bps", "--input", rel_gw.to_str().unwrap()]);
    assert_eq!(back, read(&rel));
    let local_again = stdout(&["transform", "--input", rel.to_str().unwrap(), "--direction", "relative-to-local"]);
    assert_eq!(local_again, read(&local));
    let gw_again = stdout(&["local-bps", "--inverse", "--input", local.to_str().unwrap()]);
    assert!(gw_again.contains("coeffs = [\"3\", \"-45/8\", \"244/9\"]"));
}

#[test]
fn matrix_and_inverse() {
    assert_eq!(stdout(&["matrix", "--w", "3", "--upto", "3", "--format", "csv"]), "s,t1,t2,t3\n1,1,0,0\n2,1,1,0\n3,1,0,1\n");
    assert_eq!(
        stdout(&["matrix", "--w", "3", "--upto", "3", "--inverse", "--format", "csv"]),
        "s,t1,t2,t3\n1,1,0,0\n2,-1,1,0\n3,-1,0,1\n"
    );
    assert!(stdout(&["matrix", "--w", "3", "--upto", "2"]).contains("rows = [[\"1\", \"0\"], [\"1\", \"1\"]]"));
}

#[test]
fn integrality_check() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "r.toml", "kind = \"relative_bps\"\nw = 3\ncoeffs = [\"9\", \"27/2\"]\n");
    assert_eq!(
        stdout(&["check-integrality", "--input", &f, "--format", "csv"]),
        "kind,pass,non_integral\nrelative_bps,false,2\n"
    );
    let g = write(&dir, "g.toml", "kind = \"local_gw\"\nw = 3\ncoeffs = [\"9\"]\n");
    assert_eq!(bps(&["check-integrality", "--input", &g]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.toml", "kind = \"local_gw\"\nw = 3\ncoeffs = [\"1/0\"]\n");
    let out = bps(&["local-bps", "--input", &f]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("coeffs[0]"), "{err}");

    // wrong kind for the command
    assert_eq!(bps(&["relative-bps", "--input", sample().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(bps(&["local-bps", "--input", "/nonexistent/file.toml"]).status.code(), Some(1));
    assert_eq!(bps(&["matrix", "--w", "0", "--upto", "3"]).status.code(), Some(1));
    assert_eq!(bps(&["dt", "--loops", "2"]).status.code(), Some(1));
    assert_eq!(bps(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let s = sample();
    let args = ["pipeline", "--input", s.to_str().unwrap()];
    assert_eq!(bps(&args).stdout, bps(&args).stdout);
    let args = ["dt", "--loops", "6", "--upto", "20", "--format", "csv"];
    assert_eq!(bps(&args).stdout, bps(&args).stdout);
}

#[test]
fn pipeline_equals_manual_composition() {
    let gw = parse_series_str(&std::fs::read_to_string(sample()).unwrap()).unwrap().into_gw(Kind::Local).unwrap();
    let report = run_pipeline(&gw, None).unwrap();
    let local = local_bps_from_gw(&gw).unwrap();
    let rel = local_to_relative_bps(&local, local.len()).unwrap();
    let rel_gw = relative_gw_from_bps(&rel).unwrap();
    assert_eq!(report.local_bps, local);
    assert_eq!(report.relative_bps, rel);
    assert_eq!(report.relative_gw, rel_gw);

    let via_execute = execute(&Sub::Pipeline { input: sample(), upto: None }, Format::Structured).unwrap();
    assert_eq!(via_execute, emit_table(&report, Format::Structured));
}

fn rational() -> impl Strategy<Value = ExactRational> {
    (any::<i64>(), 1i64..=1_000_000).prop_map(|(n, d)| ExactRational::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn parse_emit_parse_is_identity(
        w in 1u32..=20,
        primitive in any::<bool>(),
        relative in any::<bool>(),
        entries in prop::collection::vec(rational(), 1..30),
    ) {
        let g = GeometryParams::new(w, primitive).unwrap();
        let kind = if relative { Kind::Relative } else { Kind::Local };
        let data = SeriesData::Bps(BpsVector::new(kind, g, entries));
        let text = emit_table(&data, Format::Structured);
        let parsed = parse_series_str(&text).unwrap();
        prop_assert_eq!(&parsed, &data);
        prop_assert_eq!(emit_table(&parsed, Format::Structured), text);
    }
}
