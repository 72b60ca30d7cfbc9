//! End-to-end tests of the binary: exit codes, canonical text, and JSON
//! round trips.

use std::io::Write;
use std::process::{Command, Output};

use arrjac_cli::json::{ArrangementJson, JacobianJson, LatticeJson, ReconstructJson, SliceJson};

const A1: &str = "dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n";
const A2: &str = "dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n1 0 -1\n";
const J1: &str = "dim 3\n2*z1*z2*z3 + z2^2*z3 - z2*z3^2\nz1^2*z3 + 2*z1*z2*z3 - z1*z3^2\nz1^2*z2 + z1*z2^2 - 2*z1*z2*z3\n";

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn arrjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrjac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn jacobian_prints_q_and_generators() {
    let f = write_temp(A1);
    let out = arrjac(&["jacobian", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Q = z1^2*z2*z3 + z1*z2^2*z3 - z1*z2*z3^2"));
    assert!(text.contains("dQ/dz1 = 2*z1*z2*z3 + z2^2*z3 - z2*z3^2"));
}

#[test]
fn jacobian_warns_on_a_smooth_divisor() {
    let f = write_temp("dim 3\n1 0 0\n");
    let out = arrjac(&["jacobian", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("unit ideal"));
}

#[test]
fn jacobian_json_round_trips() {
    let f = write_temp(A1);
    let out = arrjac(&["jacobian", f.path().to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let parsed: JacobianJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!parsed.unit_ideal);
    assert_eq!(parsed.generators.len(), 3);
    let reprinted = serde_json::to_string(&parsed).unwrap();
    let reparsed: JacobianJson = serde_json::from_str(&reprinted).unwrap();
    assert_eq!(parsed, reparsed);
    // the embedded arrangement parses back to the same arrangement
    let a = parsed.arrangement.to_arrangement().unwrap();
    assert!(a.identical(&arrjac::arrangement::Arrangement::parse(A1).unwrap()));
    assert_eq!(ArrangementJson::of(&a), parsed.arrangement);
}

#[test]
fn malformed_line_is_named_with_exit_2() {
    let f = write_temp("dim 3\n1 0\n");
    let out = arrjac(&["jacobian", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn duplicate_covector_is_exit_2() {
    let f = write_temp("dim 3\n2 0 0\n1 0 0\n0 1 0\n");
    let out = arrjac(&["jacobian", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("duplicate"));
}

#[test]
fn degree_guard_overrun_is_exit_3() {
    let f = write_temp(A1);
    let out = arrjac(&[
        "jacobian",
        f.path().to_str().unwrap(),
        "--degree-guard",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("degree guard"));
}

#[test]
fn lattice_json_matches_the_known_lattice() {
    let f = write_temp(A1);
    let out = arrjac(&["lattice", f.path().to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let parsed: LatticeJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.flats.len(), 12);
    let l2: Vec<_> = parsed.flats.iter().filter(|x| x.codim == 2).collect();
    assert_eq!(l2.len(), 6);
    assert!(l2.iter().all(|x| x.mu == 1));
    let origin = parsed.flats.iter().find(|x| x.codim == 3).unwrap();
    assert_eq!(origin.mu, -3);
    assert_eq!(origin.members, vec![0, 1, 2, 3]);
}

#[test]
fn slice_agrees_on_members_and_outsiders() {
    let f = write_temp(A2);
    for (cov, expected) in [("1 0 -1", 4i64), ("1 1 0", 2)] {
        let out = arrjac(&[
            "slice",
            f.path().to_str().unwrap(),
            "--hyperplane",
            cov,
            "--json",
        ]);
        assert!(out.status.success(), "covector {cov}");
        let parsed: SliceJson = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(parsed.agree);
        assert_eq!(parsed.mu_k, expected);
        assert_eq!(parsed.degree_slice, expected);
    }
}

#[test]
fn reconstruct_from_ideal_file_recovers_the_arrangement() {
    let f = write_temp(J1);
    let out = arrjac(&["reconstruct", f.path().to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let parsed: ReconstructJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.inferred_n, 4);
    assert!(parsed.certificate);
    assert_eq!(parsed.candidates.len(), 7);
    assert_eq!(parsed.singular_points.len(), 6);
    let accepted = parsed.accepted.to_arrangement().unwrap();
    assert!(accepted.identical(&arrjac::arrangement::Arrangement::parse(A1).unwrap()));
    // report JSON round-trips
    let reprinted = serde_json::to_string(&parsed).unwrap();
    let reparsed: ReconstructJson = serde_json::from_str(&reprinted).unwrap();
    assert_eq!(parsed, reparsed);
}

#[test]
fn reconstruct_from_arrangement_flag() {
    let f = write_temp(A2);
    let out = arrjac(&[
        "reconstruct",
        f.path().to_str().unwrap(),
        "--from-arrangement",
        "--json",
    ]);
    assert!(out.status.success());
    let parsed: ReconstructJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.inferred_n, 5);
    let accepted = parsed.accepted.to_arrangement().unwrap();
    assert!(accepted.identical(&arrjac::arrangement::Arrangement::parse(A2).unwrap()));
}

#[test]
fn reconstruct_rejects_a_non_jacobian_ideal_with_exit_4() {
    let f = write_temp("dim 3\nz1^3\nz2^3\nz3^3\n");
    let out = arrjac(&["reconstruct", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("reconstruction failed"));
}

#[test]
fn verify_radical_suite_passes() {
    let out = arrjac(&["verify", "--suite", "radical"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("7/7 cases passed"));
}

#[test]
fn verify_lem2dim_is_seeded_and_reproducible() {
    let a = arrjac(&["verify", "--suite", "lem2dim", "--seed", "7"]);
    let b = arrjac(&["verify", "--suite", "lem2dim", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("seed: 7"));
}

#[test]
fn verify_unknown_suite_is_exit_2() {
    let out = arrjac(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jobs_flag_does_not_change_output() {
    let f = write_temp(J1);
    let a = arrjac(&["reconstruct", f.path().to_str().unwrap(), "--jobs", "1"]);
    let b = arrjac(&["reconstruct", f.path().to_str().unwrap(), "--jobs", "4"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
