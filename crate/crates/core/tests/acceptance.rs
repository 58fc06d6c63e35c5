//! Acceptance suite: one test per exit criterion, each printing a pass/fail
//! line. Tolerances are pinned in `gatelab::acceptance::Tolerances`.

use std::path::PathBuf;

use gatelab::acceptance::{
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
    criterion_8, CriterionResult, Tolerances,
};

const SEED: u64 = 2026;

fn assert_criterion(result: CriterionResult) {
    println!("acceptance {}", result.line());
    for note in &result.notes {
        println!("  note: {note}");
    }
    if !result.pass() {
        for check in result.checks.iter().filter(|c| !c.pass) {
            println!(
                "  FAILED {}: expected {:+.6e}, observed {:+.6e}, tolerance {:.3e}",
                check.name, check.expected, check.observed, check.tolerance
            );
        }
    }
    assert!(result.pass(), "{} failed", result.line());
}

#[test]
fn criterion_1_cyclic_pst_phase() {
    assert_criterion(criterion_1(&Tolerances::default()));
}

#[test]
fn criterion_2_transfer_gate_phase() {
    assert_criterion(criterion_2(&Tolerances::default()));
}

#[test]
fn criterion_3_qubit_gate_phases() {
    assert_criterion(criterion_3(&Tolerances::default()));
}

#[test]
fn criterion_4_gate_realization_theorem() {
    assert_criterion(criterion_4(&Tolerances::default(), SEED));
}

#[test]
fn criterion_5_superposition_condition() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    assert_criterion(criterion_5(&Tolerances::default(), Some(&dir)));
}

#[test]
fn criterion_6_dark_state() {
    assert_criterion(criterion_6(&Tolerances::default()));
}

#[test]
fn criterion_7_boson_ring() {
    assert_criterion(criterion_7(&Tolerances::default()));
}

#[test]
fn criterion_8_numerical_hygiene() {
    assert_criterion(criterion_8(&Tolerances::default(), SEED));
}
