//! Acceptance suite. Every criterion is an exact identity (no tolerances,
//! no floating point) checked over fixed examples plus seeded random
//! corpora, with one PASS/FAIL line printed per criterion. The Gröbner
//! audit (every S-polynomial of every computed basis reduces to zero) is
//! switched on for the whole run.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use arrjac::ideals::audit;
use arrjac::suites::{self, SuiteReport};

const SEED: u64 = 0xA11CE;

fn report(criterion: &str, reports: &[&SuiteReport], elapsed: Duration) {
    let pass = reports.iter().all(|r| r.passed());
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    println!(
        "[acceptance] {criterion}: {} ({cases} cases, {elapsed:.2?}, seed {SEED})",
        if pass { "PASS" } else { "FAIL" },
    );
    for r in reports {
        for c in &r.cases {
            if !c.pass {
                println!(
                    "    counterexample: {} - {}",
                    c.label,
                    c.detail.clone().unwrap_or_default()
                );
            }
        }
    }
    assert!(pass, "{criterion} failed");
}

#[test]
fn criterion_1_two_variable_restriction() {
    audit::set_enabled(true);
    let t0 = Instant::now();
    let r = suites::suite_lem2dim(SEED);
    let dt = t0.elapsed();
    report(
        "criterion 1: J(Q)+(z2) = (z1^(n-1), z2) with quotient dimension n-1",
        &[&r],
        dt,
    );
    assert!(dt < Duration::from_secs(5), "budget 5 s, took {dt:?}");
}

#[test]
fn criterion_2_radical_example() {
    audit::set_enabled(true);
    let t0 = Instant::now();
    let r = suites::suite_radical();
    let dt = t0.elapsed();
    report(
        "criterion 2: equal radicals, distinct saturations",
        &[&r],
        dt,
    );
    assert!(dt < Duration::from_secs(30), "budget 30 s, took {dt:?}");
}

struct DegreeMull {
    degree: SuiteReport,
    mull: SuiteReport,
    elapsed: Duration,
}

fn degree_mull() -> &'static DegreeMull {
    static SHARED: OnceLock<DegreeMull> = OnceLock::new();
    SHARED.get_or_init(|| {
        audit::set_enabled(true);
        let t0 = Instant::now();
        let (degree, mull) = suites::suite_degree_and_mull(SEED);
        DegreeMull {
            degree,
            mull,
            elapsed: t0.elapsed(),
        }
    })
}

#[test]
fn criterion_3_degree_moebius_agreement() {
    let shared = degree_mull();
    report(
        "criterion 3: deg-slice(J(Q), K) = mu_A(K) on the whole corpus",
        &[&shared.degree],
        shared.elapsed,
    );
    assert!(
        shared.elapsed < Duration::from_secs(120),
        "budget 2 min, took {:?}",
        shared.elapsed
    );
}

#[test]
fn criterion_4_slice_maximality() {
    let shared = degree_mull();
    report(
        "criterion 4: mu_A(K) = |A|-1 inside A, mu_A(K) < |A|-1 outside",
        &[&shared.mull],
        shared.elapsed,
    );
}

#[test]
fn criterion_5_round_trip() {
    audit::set_enabled(true);
    let t0 = Instant::now();
    let r = suites::suite_roundtrip(SEED);
    let dt = t0.elapsed();
    report(
        "criterion 5: reconstruct(J(Q)) is identical to A with a true certificate",
        &[&r],
        dt,
    );
    assert!(dt < Duration::from_secs(180), "budget 3 min, took {dt:?}");
}

#[test]
fn criterion_6_degree_identities() {
    audit::set_enabled(true);
    let t0 = Instant::now();
    let r = suites::suite_degree_identities();
    let dt = t0.elapsed();
    report(
        "criterion 6: deg J(Q) values and the flat-local component identities",
        &[&r],
        dt,
    );
    assert!(dt < Duration::from_secs(120), "budget 2 min, took {dt:?}");
}

#[test]
fn criterion_7_engine_self_checks() {
    audit::set_enabled(true);
    let t0 = Instant::now();
    let r = suites::suite_engine_selfchecks(SEED);
    let dt = t0.elapsed();
    report(
        "criterion 7: S-pair audits on every basis, Hilbert vs direct counts",
        &[&r],
        dt,
    );
}
