//! Acceptance battery: one test per criterion, each printing its
//! pass/fail line. Run with `--nocapture` to see the lines as they
//! complete.

use charstrat::verify;

const SEED: u64 = 20260810;

fn check(result: verify::CriterionResult) {
    println!("{}", result.line());
    assert!(result.pass, "{}", result.line());
}

#[test]
fn criterion_01_lattice_minimum() {
    check(verify::criterion_1());
}

#[test]
fn criterion_02_stratum_occupancy_census() {
    check(verify::criterion_2());
}

#[test]
fn criterion_03_tower_fit_codimensions() {
    check(verify::criterion_3(1_000_000, SEED));
}

#[test]
fn criterion_04_rank_census_vs_oracle() {
    check(verify::criterion_4());
}

#[test]
fn criterion_05_cubic_selfmaps_unique_bad_point() {
    check(verify::criterion_5(SEED));
}

#[test]
fn criterion_06_generic_critical_locus_finite() {
    check(verify::criterion_6(SEED));
}

#[test]
fn criterion_07_morse_splitting() {
    check(verify::criterion_7(SEED));
}

#[test]
fn criterion_08_constructive_determinacy() {
    check(verify::criterion_8(SEED));
}

#[test]
fn criterion_09_char2_symbol_parity() {
    check(verify::criterion_9(SEED));
}

#[test]
fn criterion_10_formula_coherence() {
    check(verify::criterion_10());
}

#[test]
fn criterion_11_pointwise_differentials() {
    check(verify::criterion_11(SEED));
}
