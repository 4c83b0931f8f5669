//! Runs the `platsurf` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn platsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_platsurf"))
        .args(args)
        .env_remove("PLATSURF_OUT_DIR")
        .output()
        .expect("failed to run platsurf")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is not JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("platsurf-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn usage_errors_exit_with_status_2() {
    assert_eq!(platsurf(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(platsurf(&["perms", "--solid", "sphere"]).status.code(), Some(2));
    assert_eq!(platsurf(&["--precision", "5", "perms"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_with_status_1() {
    let bad = scratch("corrupt-orbit.json");
    std::fs::write(&bad, "{\"n\": 3, \"perms\": ").unwrap();
    let out = platsurf(&["teich", "--orbit", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    // A vector pointing below the reduction sector.
    let out = platsurf(&["reduce", "--vector", "0,0,0,0;-1,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unfold_reports_stratum_and_genus() {
    let v = json_of(&platsurf(&["unfold", "--solid", "cube"]));
    assert_eq!(v["stratum"], "H(2^8)");
    assert_eq!(v["genus"], 9);

    let svg = scratch("dodecahedron.svg");
    let v = json_of(&platsurf(&["unfold", "--svg", svg.to_str().unwrap()]));
    assert_eq!(v["stratum"], "H(8^20)");
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn perms_report_group_order() {
    let v = json_of(&platsurf(&["perms", "--solid", "icosahedron"]));
    assert_eq!(v["group_order"], 60);
}

#[test]
fn origami_table_lists_the_arithmetic_solids() {
    let out = platsurf(&["origami-table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    let summary: Vec<(String, String, String)> =
        rows.iter().map(|r| (r[0].to_string(), r[1].to_string(), r[6].to_string())).collect();
    let expected = [("tetrahedron", "1", "0"), ("octahedron", "4", "0"), ("cube", "9", "0"), ("icosahedron", "10", "0")];
    assert_eq!(summary.len(), expected.len());
    for ((s, i, g), (es, ei, eg)) in summary.iter().zip(expected) {
        assert_eq!((s.as_str(), i.as_str(), g.as_str()), (es, ei, eg));
    }
}

#[test]
fn reduce_classifies_a_long_saddle_connection() {
    // Row 1 of the class representatives: (12 - 3 s^2, 19 s - 5 s^3).
    let v = json_of(&platsurf(&["reduce", "--vector", "12,0,-3,0;0,19,0,-5"]));
    assert_eq!(v["kind"], "long");
    assert_eq!(v["length"], "16.2386");
}

#[test]
fn trace_closes_along_a_class_representative() {
    let (k, holonomy) = platsurf::saddle::normalize_holonomy("RRRTT").unwrap();
    let v = json_of(&platsurf(&["trace", "--word", "RRRTT", "--k", &k.to_string()]));
    assert_eq!(v["closed"], true);
    assert_eq!(v["direction"][0], holonomy.x.to_poly_string());
    assert_eq!(v["length"], "16.2386");
}

#[test]
fn orbit_pipeline_end_to_end() {
    let orbit = scratch("orbit.json");
    let v = json_of(&platsurf(&["orbit", "--out", orbit.to_str().unwrap()]));
    assert_eq!(v["N"], 2106);
    let orbit = orbit.to_str().unwrap();

    let v = json_of(&platsurf(&["teich", "--orbit", orbit]));
    assert_eq!(v["genus"], 131);
    assert_eq!(v["cusps"], 362);

    let out = platsurf(&["saddles", "--kind", "long", "--orbit", orbit]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 32);
    assert!(text.lines().nth(1).unwrap().starts_with("1,RRRTT,"));

    let out = platsurf(&["saddles", "--kind", "short", "--orbit", orbit]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);

    let v = json_of(&platsurf(&["reduce", "--vector", "12,0,-3,0;0,19,0,-5", "--orbit", orbit]));
    assert_eq!(v["closed"], true);
}
