//! Rank-based prover for projective incidence geometry.
//!
//! Statements give rank constraints on sets of named points. The engine
//! keeps an interval for the rank of every subset and narrows the intervals
//! with monotonicity and submodularity rules until a fixpoint, then reads
//! the conclusions off the table. Every narrowing is traced, and the trace
//! can be pruned into a certificate that an independent checker replays.
//! Finite projective spaces over small prime fields serve as models for
//! refutation and for testing.

pub mod certificate;
pub mod engine;
mod error;
mod interval;
pub mod oracle;
pub mod parser;
mod state;
mod statement;
mod trace;
mod universe;

pub use error::StatementError;
pub use interval::RankInterval;
pub use state::{init_state, initial_interval, Contradiction, SaturationState};
pub use statement::{RankConstraint, Relation, Statement};
pub use trace::{Bound, RuleId, StepId, StepKind, TraceStep, INIT_STEP};
pub use universe::{PointSet, PointUniverse, DEFAULT_MAX_POINTS, HARD_MAX_POINTS};

pub use oracle::{Gf, Gf2, Gf3, Pg2, Pg3, ProjectiveModel, Rational, RationalVectors};
