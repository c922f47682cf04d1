//! The engine agrees with an independent, naive implementation of the
//! eight rules, both on the corpus and on random statements.

mod common;

use common::reference::reference_fixpoint;
use common::{gen, load, saturated, SMALL_CORPUS};
use proptest::prelude::*;
use rankprover::engine::Strategy;
use rankprover::{SaturationState, Statement};

fn assert_matches_reference(stmt: &Statement, state: &SaturationState) {
    match reference_fixpoint(stmt) {
        None => assert!(state.is_contradictory(), "reference found a contradiction"),
        Some(expected) => {
            assert!(!state.is_contradictory(), "engine found a spurious contradiction");
            for (bits, (iv, &(lo, hi))) in state.table().iter().zip(&expected).enumerate() {
                assert_eq!(
                    (iv.lo as i32, iv.hi as i32),
                    (lo, hi),
                    "set {}",
                    stmt.universe().display_set(rankprover::PointSet::from_bits(bits as u32))
                );
            }
        }
    }
}

#[test]
fn corpus_matches_reference() {
    for &(name, _) in SMALL_CORPUS {
        let stmt = load(name);
        for strategy in [Strategy::Worklist, Strategy::FullRescan] {
            assert_matches_reference(&stmt, &saturated(&stmt, strategy));
        }
    }
}

#[test]
fn contradiction_matches_reference() {
    let stmt = load("extra/contradiction.stmt");
    assert_matches_reference(&stmt, &saturated(&stmt, Strategy::Worklist));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_statements_match_reference(stmt in gen::statement(6)) {
        assert_matches_reference(&stmt, &saturated(&stmt, Strategy::Worklist));
        assert_matches_reference(&stmt, &saturated(&stmt, Strategy::FullRescan));
    }
}
