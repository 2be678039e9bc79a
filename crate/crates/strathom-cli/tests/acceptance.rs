//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). The criteria bodies live in
//! `strathom_cli::selftest` and are shared with the `selftest` subcommand.
//!
//! The rep-z2 half of the extension-count criterion asserts the stated
//! expectation of eight classes; honest enumeration finds two (toric code
//! and double semion), so that test is expected to fail until the stated
//! count is revisited. Everything else must pass.

use strathom_cli::selftest;

fn report(outcome: &selftest::CriterionOutcome) {
    println!(
        "{} {} - {}",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.detail
    );
}

#[test]
fn criterion_1_modular_extension_count_rep_z2() {
    let outcome = selftest::criterion_1_rep_z2();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_1_modular_extension_count_svec() {
    let outcome = selftest::criterion_1_svec();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_2_group_axioms() {
    let outcome = selftest::criterion_2_group_axioms();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_3_center_functoriality() {
    let outcome = selftest::criterion_3_center_functoriality();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_4_morita() {
    let outcome = selftest::criterion_4_morita();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_5_coherence_derivation() {
    let outcome = selftest::criterion_5_coherence();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_6_condensation_consistency() {
    let outcome = selftest::criterion_6_condensation();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_7_surface_evaluation_vs_verlinde() {
    let outcome = selftest::criterion_7_verlinde();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_8_move_invariance() {
    let outcome = selftest::criterion_8_move_invariance();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_9_determinism() {
    let outcome = selftest::criterion_9_determinism();
    report(&outcome);
    assert!(outcome.passed, "{}", outcome.detail);

    // Also at the real command level: byte-identical output across two
    // invocations of `reduce --trace` and `evaluate` on a file.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("genus2.surf");
    let surface = strathom::stratsurf::StratifiedSurface::unstratified(
        "trivial",
        2,
        strathom::stratsurf::LabelExpr::atom("toric-code"),
    );
    std::fs::write(&path, surface.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let reduce1 = strathom_cli::run_args(&["reduce", p, "--trace"]);
    let reduce2 = strathom_cli::run_args(&["reduce", p, "--trace"]);
    assert_eq!(reduce1, reduce2);
    assert_eq!(reduce1.exit_code, 0);
    let eval1 = strathom_cli::run_args(&["evaluate", p]);
    let eval2 = strathom_cli::run_args(&["evaluate", p]);
    assert_eq!(eval1, eval2);
    assert_eq!(eval1.exit_code, 0);
    assert!(eval1.stdout.contains("gsd 16"));
}
