use std::process::Command;

use gwa_hh_cli::{Report, SCHEMA};

fn gwa(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gwa-hh")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(stdout: &str) -> Report {
    serde_json::from_str(stdout).expect("stdout is a report")
}

#[test]
fn verify_generic_case_matches() {
    let (code, out, _) = gwa(&["verify", "--a", "h^2-1", "--q", "2", "--weights", "-2..2", "--degrees", "0..3"]);
    assert_eq!(code, 0);
    let rep = report(&out);
    assert_eq!(rep.schema, SCHEMA);
    assert_eq!(rep.records.len(), 2 * 5 * 4);
    assert!(rep.records.iter().all(|r| r.verdict == Some(gwa_hh::closedform::Verdict::Match)));
    assert_eq!(rep.metadata.truncations, vec![16, 20, 24]);
}

#[test]
fn identities_pass_at_root_of_unity() {
    let (code, out, _) = gwa(&["identities", "--a", "h^2+1", "--q", "-1", "--weights", "-1..1", "--degrees", "0..3"]);
    assert_eq!(code, 0);
    let rep = report(&out);
    assert!(!rep.identities.is_empty());
    assert!(rep.identities.iter().all(|r| r.passed()));
}

#[test]
fn gldim_repeated_root() {
    let (code, out, _) = gwa(&["gldim", "--a", "(h-1)^2*(h+2)", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report(&out).gldim, Some(gwa_hh::closedform::GlDim::Infinite));
    let (_, out, _) = gwa(&["gldim", "--a", "h^2-1", "--q", "zeta:5"]);
    let rep = report(&out);
    assert_eq!(rep.gldim, Some(gwa_hh::closedform::GlDim::Finite2));
    assert_eq!(rep.metadata.e, Some(5));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gwa(&["verify", "--a", "h^2-1", "--q", "2", "--weights", "3..1"]).0, 2);
    assert_eq!(gwa(&["verify", "--a", "h^2-1", "--q", "2", "--trunc", "20,16"]).0, 2);
    assert_eq!(gwa(&["verify", "--a", "h^^2", "--q", "2"]).0, 2);
    assert_eq!(gwa(&["verify", "--a", "h^2-1", "--q", "zeta:x"]).0, 2);
    assert_eq!(gwa(&["frobnicate"]).0, 2);
}

#[test]
fn hypothesis_violations_exit_three() {
    assert_eq!(gwa(&["predict", "--a", "h", "--q", "2"]).0, 3);
    assert_eq!(gwa(&["predict", "--a", "2*h^2+1", "--q", "2"]).0, 3);
    let (code, _, err) = gwa(&["predict", "--a", "h^2", "--q", "2", "--weights", "0..0"]);
    assert_eq!(code, 3);
    assert!(err.contains("a(0)"));
    // compute mode has no closed forms to violate
    assert_eq!(gwa(&["compute", "--a", "h^2", "--q", "2", "--weights", "0..0", "--degrees", "0..1"]).0, 0);
}

#[test]
fn csv_output() {
    let (code, out, _) = gwa(&[
        "verify", "--a", "h^2-1", "--q", "2", "--weights", "0..0", "--degrees", "0..1", "--direction", "coh", "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["r,p,direction,predicted,computed,verdict", "0,0,coh,1,1;1;1,match", "0,1,coh,1,1;1;1,match"]);
}

#[test]
fn json_round_trip() {
    let (_, out, _) = gwa(&["compute", "--a", "h^2+1", "--q", "-1", "--weights", "1..1", "--degrees", "0..1", "--jobs", "2"]);
    let rep = report(&out);
    let again = serde_json::to_string_pretty(&rep).unwrap();
    assert_eq!(report(&again), rep);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&out).unwrap(), serde_json::to_value(&rep).unwrap());
    let rec = &rep.records[0];
    assert!(rec.predicted.is_none());
    assert_eq!(rec.s_invariants.as_ref().map(|s| s.free_rank), Some(0));
}

#[test]
fn small_tables() {
    let (code, out, _) = gwa(&["predict", "--a", "h^2-1", "--q", "2", "--degrees", "0..0", "--direction", "hom", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 7);
    let (code, out, _) = gwa(&["gldim", "--a", "h^2-1", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(report(&out).records.is_empty());
}
