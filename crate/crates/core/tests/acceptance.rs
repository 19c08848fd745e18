//! One test per acceptance criterion. Each prints a summary line; the harness reports
//! `ok` or `FAILED` per criterion.

use knot_torsion::verify::{run_criterion, VerifyConfig};

fn criterion(id: u8) {
    let report = run_criterion(id, &VerifyConfig::default());
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {id}: {status} - {} ({} cases, max error {:.2e}, seed {})",
        report.title,
        report.cases.len(),
        report.max_error(),
        report.seed
    );
    let failures: Vec<String> = report
        .failures()
        .map(|c| format!("{} error={:?} {}", c.name, c.error, c.detail))
        .collect();
    for f in &failures {
        println!("    failed: {f}");
    }
    assert!(
        report.passed(),
        "criterion {id} failed:\n{}",
        failures.join("\n")
    );
}

#[test]
fn criterion_1_abelian_torsion_is_alexander_quotient() {
    criterion(1);
}

#[test]
fn criterion_2_splitting_torus_torsion_is_unit() {
    criterion(2);
}

#[test]
fn criterion_3_family_an_end_to_end() {
    criterion(3);
}

#[test]
fn criterion_4_family_na_end_to_end() {
    criterion(4);
}

#[test]
fn criterion_5_family_nn_end_to_end() {
    criterion(5);
}

#[test]
fn criterion_6_scalar_identities() {
    criterion(6);
}

#[test]
fn criterion_7_engine_properties() {
    criterion(7);
}

#[test]
fn criterion_8_induced_map_goldens() {
    criterion(8);
}
