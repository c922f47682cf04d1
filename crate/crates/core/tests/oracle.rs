//! The projective-space oracle: exact ranks, the rank axioms, and
//! agreement with the engine on sampled models.

mod common;

use std::collections::HashSet;

use common::{load, saturated, SMALL_CORPUS};
use proptest::prelude::*;
use rankprover::engine::Strategy;
use rankprover::oracle::{
    check_assignment, sample_satisfying, search_countermodel, Assignment, AssignmentCheck,
    FiniteField, SearchOutcome,
};
use rankprover::{Gf2, Gf3, Pg2, Pg3, PointSet, ProjectiveModel, Rational, RationalVectors, Statement};

/// Rank as `log_q` of the number of distinct vectors in the span.
fn span_rank<F: FiniteField + std::hash::Hash + Eq>(
    model: &ProjectiveModel<F>,
    points: &[usize],
) -> u32 {
    let elements = F::elements();
    let q = elements.len();
    let cols = model.columns();
    let mut span = HashSet::new();
    for mut code in 0..q.pow(points.len() as u32) {
        let mut v = vec![F::zero(); cols];
        for &p in points {
            let c = elements[code % q];
            code /= q;
            for (acc, &x) in v.iter_mut().zip(model.point(p)) {
                *acc = *acc + c * x;
            }
        }
        span.insert(v);
    }
    let mut rank = 0;
    while q.pow(rank) < span.len() {
        rank += 1;
    }
    assert_eq!(q.pow(rank), span.len(), "span size is a power of q");
    rank
}

#[test]
fn point_counts() {
    assert_eq!(Pg2::pg(2).len(), 7);
    assert_eq!(Pg2::pg(3).len(), 15);
    assert_eq!(Pg3::pg(2).len(), 13);
    assert_eq!(Pg3::pg(3).len(), 40);
}

#[test]
fn rank_axioms_hold_on_the_fano_plane() {
    let model = Pg2::pg(2);
    let identity: Vec<usize> = (0..7).collect();
    let rk = |s: u32| model.rank_of_set(&identity, PointSet::from_bits(s));
    let ranks: Vec<u32> = (0..128).map(rk).collect();
    for x in 0..128u32 {
        assert!(ranks[x as usize] <= x.count_ones(), "A1 upper bound");
        assert!(ranks[x as usize] <= 3, "dimension cap");
        if x.count_ones() == 1 {
            assert_eq!(ranks[x as usize], 1, "points have rank one");
        }
        for y in 0..128u32 {
            let (rx, ry) = (ranks[x as usize], ranks[y as usize]);
            if x & !y == 0 {
                assert!(rx <= ry, "A2 monotonicity");
            }
            let (ru, ri) = (ranks[(x | y) as usize], ranks[(x & y) as usize]);
            assert!(ru + ri <= rx + ry, "A3 submodularity");
        }
    }
    assert_eq!(ranks[0], 0);
    assert_eq!(ranks[127], 3);
    // The Fano plane has seven lines of three points.
    let lines = (0..128u32)
        .filter(|&s| s.count_ones() == 3 && ranks[s as usize] == 2)
        .count();
    assert_eq!(lines, 7);
}

#[test]
fn rational_points_have_exact_ranks() {
    let r = |n: i64, d: i64| Rational::new(n, d);
    let model = RationalVectors::from_points(
        2,
        &[
            vec![r(1, 1), r(0, 1), r(0, 1)],
            vec![r(0, 1), r(1, 1), r(0, 1)],
            vec![r(1, 3), r(2, 3), r(0, 1)],
            vec![r(1, 2), r(1, 7), r(1, 5)],
        ],
    );
    assert_eq!(model.rank(&[0, 1, 2]), 2);
    assert_eq!(model.rank(&[0, 1, 3]), 3);
    assert_eq!(model.rank(&[2, 2]), 1);
    assert_eq!(model.rank(&[]), 0);
}

fn plane_intersection_model() -> (Pg2, Assignment) {
    let v = |c: [u8; 4]| c.iter().map(|&x| Gf2::new(x)).collect::<Vec<_>>();
    // Planes x0 = 0 (A B C) and x1 = 0 (A' B' C') meet in the line of M, N, P.
    let coords = [
        v([0, 1, 0, 0]),
        v([0, 1, 1, 0]),
        v([0, 1, 0, 1]),
        v([1, 0, 0, 0]),
        v([1, 0, 1, 0]),
        v([1, 0, 0, 1]),
        v([0, 0, 1, 0]),
        v([0, 0, 0, 1]),
        v([0, 0, 1, 1]),
    ];
    (ProjectiveModel::from_points(3, &coords), Assignment((0..9).collect()))
}

#[test]
fn plane_intersection_has_a_model() {
    let stmt = load("plane_intersection.stmt");
    let (model, asg) = plane_intersection_model();
    assert_eq!(check_assignment(&model, &stmt, &asg), AssignmentCheck::Satisfies);
    assert!(stmt.conclusions().iter().all(|c| asg.holds(&model, c)));
}

#[test]
fn broken_assignment_names_the_failing_hypothesis() {
    let stmt = load("plane_intersection.stmt");
    let (model, mut asg) = plane_intersection_model();
    // Move C onto the line A B: the first hypothesis, A B C : 3, fails.
    asg.0[2] = asg.0[1];
    assert_eq!(check_assignment(&model, &stmt, &asg), AssignmentCheck::Violates(0));
}

/// Every sampled model of the hypotheses has ranks inside the engine's
/// intervals. Returns the number of samples drawn.
fn bridge<F: FiniteField>(stmt: &Statement, model: &ProjectiveModel<F>, count: usize) -> usize {
    let state = saturated(stmt, Strategy::Worklist);
    let samples = sample_satisfying(stmt, model, count, 50_000_000, 7);
    for asg in &samples {
        assert_eq!(check_assignment(model, stmt, asg), AssignmentCheck::Satisfies);
        for (bits, iv) in state.table().iter().enumerate() {
            let r = asg.rank(model, PointSet::from_bits(bits as u32));
            assert!(iv.contains(r as i32), "model rank {r} outside [{}, {}]", iv.lo, iv.hi);
        }
    }
    samples.len()
}

#[test]
fn engine_agrees_with_sampled_models() {
    for &(name, _) in SMALL_CORPUS {
        let stmt = load(name);
        let model = Pg2::pg(stmt.dimension());
        assert_eq!(bridge(&stmt, &model, 100), 100, "{name}");
    }
}

#[test]
fn countermodels() {
    let distinct = load("extra/distinct.stmt");
    match search_countermodel(&distinct, &Pg2::pg(2), 1_000, 0) {
        SearchOutcome::Found { assignment, conclusion, .. } => {
            assert_eq!(conclusion, 0);
            assert_eq!(assignment.0[0], assignment.0[1]);
        }
        other => panic!("expected a countermodel, got {other:?}"),
    }
    let proved = load("extra/relation_one.stmt");
    assert!(matches!(
        search_countermodel(&proved, &Pg2::pg(2), 1_000_000, 0),
        SearchOutcome::NotFound { exhaustive: true, .. }
    ));
    let perturbed = load("extra/desargues3d_perturbed.stmt");
    assert!(matches!(
        search_countermodel(&perturbed, &Pg3::pg(3), 1_000_000, 0),
        SearchOutcome::Found { .. }
    ));
}

proptest! {
    #[test]
    fn rank_matches_span_over_gf2(d in 2u32..=3, pts in prop::collection::vec(0usize..15, 0..5)) {
        let model = Pg2::pg(d);
        let pts: Vec<usize> = pts.into_iter().map(|p| p % model.len()).collect();
        prop_assert_eq!(model.rank(&pts), span_rank(&model, &pts));
    }

    #[test]
    fn rank_matches_span_over_gf3(d in 2u32..=3, pts in prop::collection::vec(0usize..40, 0..5)) {
        let model = Pg3::pg(d);
        let pts: Vec<usize> = pts.into_iter().map(|p| p % model.len()).collect();
        prop_assert_eq!(model.rank(&pts), span_rank(&model, &pts));
    }
}

#[test]
fn gf3_arithmetic() {
    let two = Gf3::new(2);
    assert_eq!((two * two).value(), 1);
    assert_eq!(two.inv().value(), 2);
    assert_eq!((-two).value(), 1);
}
