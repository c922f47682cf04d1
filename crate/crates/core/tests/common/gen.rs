//! Random small statements for property tests.

use proptest::prelude::*;
use rankprover::{PointSet, PointUniverse, RankConstraint, Relation, Statement};

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![
        3 => Just(Relation::Eq),
        1 => Just(Relation::Le),
        1 => Just(Relation::Ge),
    ]
}

/// A constraint on a nonempty subset of `n` points with a value the set
/// could plausibly have, so that many statements stay consistent.
fn constraint(n: usize, cap: u32) -> impl Strategy<Value = RankConstraint> {
    (1u32..(1 << n), relation(), 0u32..4).prop_map(move |(bits, rel, pick)| {
        let set = PointSet::from_bits(bits);
        let most = (set.len() as u32).min(cap);
        RankConstraint::new(set, rel, 1 + pick % most)
    })
}

/// Statements on 3 to `max_points` points in dimension 2 or 3.
pub fn statement(max_points: usize) -> impl Strategy<Value = Statement> {
    (3..=max_points, 2u32..=3).prop_flat_map(|(n, dim)| {
        let cap = dim + 1;
        (
            prop::collection::vec(constraint(n, cap), 0..7),
            prop::collection::vec(constraint(n, cap), 1..3),
        )
            .prop_map(move |(hyps, concl)| {
                let names = (0..n).map(|i| format!("P{i}")).collect();
                let universe = PointUniverse::new(names, dim).expect("small universe");
                Statement::new(universe, hyps, concl).expect("constraints are in range")
            })
    })
}

/// A statement together with a permutation of its points.
pub fn statement_and_permutation(
    max_points: usize,
) -> impl Strategy<Value = (Statement, Vec<usize>)> {
    statement(max_points).prop_flat_map(|s| {
        let n = s.universe().len();
        (Just(s), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}
