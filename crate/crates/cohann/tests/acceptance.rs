//! End-to-end golden checks: each test runs one named check from the
//! verification roster, prints its verdict line, and fails loudly with the
//! check's own diagnostic if the recomputed value drifts.

use cohann::verify::run_golden_check;

fn gate(id: &str) {
    let result = run_golden_check(id).unwrap_or_else(|| panic!("unknown check {id}"));
    println!("{result}");
    assert!(result.passed, "{result}");
}

#[test]
fn a_family_annihilators() {
    gate("01-a-family-annihilators");
}

#[test]
fn solver_oracle_agreement() {
    gate("02-solver-oracle-agreement");
}

#[test]
fn jacobian_certificates() {
    gate("03-jacobian-certificates");
}

#[test]
fn syzygy_dual_invariance() {
    gate("04-syzygy-dual-invariance");
}

#[test]
fn determinantal_annihilators() {
    gate("05-determinantal-annihilators");
}

#[test]
fn semigroup_formulas() {
    gate("06-semigroup-formulas");
}

#[test]
fn milnor_numbers() {
    gate("07-milnor-numbers");
}

#[test]
fn codimension_equals_delta() {
    gate("08-codimension-equals-delta");
}

#[test]
fn branched_cover_lifts() {
    gate("09-branched-cover-lifts");
}

#[test]
fn suspension_identity() {
    gate("10-suspension-identity");
}

#[test]
fn torus_ideal_identity() {
    gate("11-torus-ideal-identity");
}

#[test]
fn deterministic_reports() {
    gate("12-deterministic-reports");
}
