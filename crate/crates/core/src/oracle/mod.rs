//! Finite projective spaces as models of rank statements.
//!
//! A model point is a nonzero coordinate vector up to scaling; the rank of
//! a set of points is the rank of their coordinate matrix. These ranks obey
//! the matroid axioms and the dimension cap exactly, so any assignment of
//! statement points that satisfies the hypotheses bounds what the engine may
//! derive, and any assignment that also breaks a conclusion refutes it.
//!
//! Absence of a countermodel over PG(d, q) is not a proof: some rank
//! statements hold over every field yet fail in general incidence spaces.

mod field;
mod model;
mod search;

pub use field::{Field, FiniteField, Gf};
pub use model::{model_rank, Coords, ProjectiveModel, RankBasis, MAX_COORDS};
pub use search::{
    check_assignment, sample_satisfying, search_countermodel, Assignment, AssignmentCheck,
    SearchOutcome, EXHAUSTIVE_POINTS,
};

pub type Gf2 = Gf<2>;
pub type Gf3 = Gf<3>;
/// PG(d, 2).
pub type Pg2 = ProjectiveModel<Gf2>;
/// PG(d, 3).
pub type Pg3 = ProjectiveModel<Gf3>;
pub type Rational = num_rational::Ratio<i64>;
/// Points with exact rational coordinates.
pub type RationalVectors = ProjectiveModel<Rational>;
