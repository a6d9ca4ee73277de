mod common;

use common::{runner, PROPERTIES};

const CASES: u32 = 256;

fn check(name: &str) {
    let (_, prop) = PROPERTIES.iter().find(|(n, _)| *n == name).expect("known property");
    if let Err(e) = prop(&mut runner(CASES)) {
        panic!("{name}: {e}");
    }
}

#[test]
fn mul_commutative_associative() {
    check("mul_commutative_associative");
}

#[test]
fn inverse_round_trip() {
    check("inverse_round_trip");
}

#[test]
fn reversion_round_trip() {
    check("reversion_round_trip");
}

#[test]
fn composition_associative() {
    check("composition_associative");
}

#[test]
fn residue_of_derivative_vanishes() {
    check("residue_of_derivative_vanishes");
}

#[test]
fn log_and_sqrt_identities() {
    check("log_and_sqrt_identities");
}

#[test]
fn evaluation_is_homomorphic() {
    check("evaluation_is_homomorphic");
}
