use ppz_core::acceptance::{criterion_count, run};

fn check(id: u8) {
    let verdict = run(id).expect("known criterion");
    println!("{}", verdict.line());
    assert!(verdict.passed, "{}", verdict.line());
}

#[test]
fn criteria_are_numbered_one_to_eleven() {
    assert_eq!(criterion_count(), 11);
    assert!(run(0).is_none() && run(12).is_none());
}

#[test]
fn criterion_01_genus_one_two_point_golden_set() {
    check(1);
}

#[test]
fn criterion_02_genus_one_family() {
    check(2);
}

#[test]
fn criterion_03_r_independence() {
    check(3);
}

#[test]
fn criterion_04_symbolic_extraction() {
    check(4);
}

#[test]
fn criterion_05_system_matrix_determinant() {
    check(5);
}

#[test]
fn criterion_06_genus_two() {
    check(6);
}

#[test]
fn criterion_07_degree_gates() {
    check(7);
}

#[test]
fn criterion_08_coefficient_identities() {
    check(8);
}

#[test]
fn criterion_09_cohft_structure() {
    check(9);
}

#[test]
fn criterion_10_r_matrix() {
    check(10);
}

#[test]
fn criterion_11_oracles() {
    check(11);
}
