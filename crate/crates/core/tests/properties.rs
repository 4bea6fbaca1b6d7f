mod common;

use common::run_property;

const CASES: u32 = 128;

#[test]
fn whitney_multiplicativity() {
    run_property("Whitney multiplicativity", CASES).unwrap();
}

#[test]
fn chi_additivity() {
    run_property("chi~ additivity", CASES).unwrap();
}

#[test]
fn power_sum_oracle() {
    run_property("power-sum oracle", CASES).unwrap();
}

#[test]
fn channel_parity() {
    run_property("channel parity", CASES).unwrap();
}

#[test]
fn specialization_naturality() {
    run_property("specialization naturality", CASES).unwrap();
}

#[test]
fn square_class_canonicalization() {
    run_property("square-class canonicalization", CASES).unwrap();
}
