//! The powerset table of rank intervals that saturation narrows.

use std::fmt;

use smallvec::SmallVec;

use crate::engine::Strategy;
use crate::interval::RankInterval;
use crate::statement::Statement;
use crate::trace::{Bound, StepId, StepKind, TraceStep, INIT_STEP};
use crate::universe::PointSet;

/// Rank intervals for every subset of a universe plus the trace of how they
/// were obtained.
///
/// `table[X]` is indexed by the bitmask of `X`. `sources[X]` holds the ids of
/// the steps that last set `lo(X)` and `hi(X)`.
#[derive(Debug, Clone)]
pub struct SaturationState {
    points: usize,
    cap: i8,
    pub(crate) table: Vec<RankInterval>,
    pub(crate) sources: Vec<[StepId; 2]>,
    pub(crate) trace: Vec<TraceStep>,
    pub(crate) pass_count: u64,
    pub(crate) contradiction: Option<StepId>,
    pub(crate) strategy: Option<Strategy>,
}

/// Hypotheses (or derived bounds) that leave some set with `lo > hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contradiction {
    /// The step that crossed `lo > hi`.
    pub step: StepId,
    pub set: PointSet,
    pub interval: RankInterval,
    /// Index of the offending hypothesis when the contradiction arose
    /// during initialization.
    pub hypothesis: Option<usize>,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "contradiction at step {}: set {:#x} has interval [{}, {}]",
            self.step,
            self.set.bits(),
            self.interval.lo,
            self.interval.hi
        )?;
        if let Some(h) = self.hypothesis {
            write!(f, " after hypothesis #{}", h + 1)?;
        }
        Ok(())
    }
}

impl std::error::Error for Contradiction {}

/// Builds the initial table for `stmt` and applies its hypotheses, failing
/// if they are directly inconsistent.
pub fn init_state(stmt: &Statement) -> Result<SaturationState, Contradiction> {
    let state = SaturationState::initialize(stmt);
    match state.contradiction_info() {
        Some(c) => Err(c),
        None => Ok(state),
    }
}

/// The axiomatic starting interval of a set: `(0, 0)` for the empty set and
/// `(1, min(|X|, cap))` otherwise.
#[inline]
pub fn initial_interval(set: PointSet, cap: u32) -> RankInterval {
    if set.is_empty() {
        RankInterval::exact(0)
    } else {
        RankInterval::new(1, set.len().min(cap as usize) as i8)
    }
}

impl SaturationState {
    /// Initial table with hypotheses applied in order. Application stops at
    /// the first hypothesis that produces a contradiction, which is then
    /// recorded in the state instead of being returned as an error.
    pub fn initialize(stmt: &Statement) -> SaturationState {
        let universe = stmt.universe();
        let n = universe.len();
        let cap = universe.rank_cap();
        let size = universe.powerset_size();
        let table = (0..size as u32)
            .map(|b| initial_interval(PointSet::from_bits(b), cap))
            .collect();
        let mut state = SaturationState {
            points: n,
            cap: cap.min(i8::MAX as u32) as i8,
            table,
            sources: vec![[INIT_STEP; 2]; size],
            trace: vec![TraceStep {
                id: INIT_STEP,
                kind: StepKind::Init,
                x: PointSet::EMPTY,
                y: PointSet::EMPTY,
                target: PointSet::EMPTY,
                old: RankInterval::exact(0),
                new: RankInterval::exact(0),
                deps: SmallVec::new(),
            }],
            pass_count: 0,
            contradiction: None,
            strategy: None,
        };
        for (i, h) in stmt.hypotheses().iter().enumerate() {
            state.apply_constraint(i, h);
            if state.contradiction.is_some() {
                break;
            }
        }
        state
    }

    /// Applies hypothesis number `index`. Returns whether the table changed.
    pub(crate) fn apply_constraint(
        &mut self,
        index: usize,
        c: &crate::statement::RankConstraint,
    ) -> bool {
        let old = self.table[c.set.index()];
        let new = c.relation.narrow(old, c.value);
        self.record(
            StepKind::Hypothesis(index),
            c.set,
            PointSet::EMPTY,
            c.set,
            new,
            SmallVec::new(),
        );
        old != new
    }

    /// Appends a step setting `target` to `new` and updates the bookkeeping.
    #[inline]
    pub(crate) fn record(
        &mut self,
        kind: StepKind,
        x: PointSet,
        y: PointSet,
        target: PointSet,
        new: RankInterval,
        deps: SmallVec<[StepId; 4]>,
    ) -> StepId {
        let id = self.trace.len() as StepId;
        let t = target.index();
        let old = self.table[t];
        if new.lo != old.lo {
            self.sources[t][0] = id;
        }
        if new.hi != old.hi {
            self.sources[t][1] = id;
        }
        self.table[t] = new;
        self.trace.push(TraceStep {
            id,
            kind,
            x,
            y,
            target,
            old,
            new,
            deps,
        });
        if new.is_contradictory() && self.contradiction.is_none() {
            self.contradiction = Some(id);
        }
        id
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// `d + 1`.
    pub fn rank_cap(&self) -> u32 {
        self.cap as u32
    }

    pub fn table(&self) -> &[RankInterval] {
        &self.table
    }

    #[inline]
    pub fn interval(&self, set: PointSet) -> RankInterval {
        self.table[set.index()]
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    /// Id of the step that last narrowed the given bound of `set`.
    #[inline]
    pub fn source(&self, set: PointSet, bound: Bound) -> StepId {
        let [lo, hi] = self.sources[set.index()];
        match bound {
            Bound::Lo => lo,
            Bound::Hi => hi,
        }
    }

    /// The strategy of the most recent saturation run.
    pub fn strategy(&self) -> Option<Strategy> {
        self.strategy
    }

    pub fn pass_count(&self) -> u64 {
        self.pass_count
    }

    /// Number of rule applications recorded so far.
    pub fn rule_steps(&self) -> usize {
        self.trace
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Rule(_)))
            .count()
    }

    pub fn is_contradictory(&self) -> bool {
        self.contradiction.is_some()
    }

    /// The first step that made some interval empty, if any.
    pub fn contradiction_step(&self) -> Option<&TraceStep> {
        self.contradiction.map(|id| &self.trace[id as usize])
    }

    pub fn contradiction_info(&self) -> Option<Contradiction> {
        self.contradiction_step().map(|s| Contradiction {
            step: s.id,
            set: s.target,
            interval: s.new,
            hypothesis: match s.kind {
                StepKind::Hypothesis(i) => Some(i),
                _ => None,
            },
        })
    }

    /// Number of nonempty sets whose rank is determined.
    pub fn determined_count(&self) -> usize {
        self.table.iter().skip(1).filter(|i| i.is_determined()).count()
    }
}
