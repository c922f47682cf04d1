//! Saturation of rank intervals under the eight narrowing rules.
//!
//! For a pair of sets `X, Y` the rules are:
//!
//! | rule | guard | update |
//! |------|-------|--------|
//! | RS1 | `X ⊆ Y`, `lo(X) > lo(Y)` | `lo(Y) ← lo(X)` |
//! | RS2 | `Y ⊆ X`, `lo(Y) > lo(X)` | `lo(X) ← lo(Y)` |
//! | RS3 | `X ⊆ Y`, `hi(Y) < hi(X)` | `hi(X) ← hi(Y)` |
//! | RS4 | `Y ⊆ X`, `hi(X) < hi(Y)` | `hi(Y) ← hi(X)` |
//! | RS5 | `hi(X) + hi(Y) - lo(X∩Y) < hi(X∪Y)` | `hi(X∪Y) ←` left side |
//! | RS6 | `hi(X) + hi(Y) - lo(X∪Y) < hi(X∩Y)` | `hi(X∩Y) ←` left side |
//! | RS7 | `lo(X∩Y) + lo(X∪Y) - hi(Y) > lo(X)` | `lo(X) ←` left side |
//! | RS8 | `lo(X∩Y) + lo(X∪Y) - hi(X) > lo(Y)` | `lo(Y) ←` left side |
//!
//! A rule is applied only when it strictly improves its target, so every
//! application narrows one interval and saturation terminates.

mod saturate;
mod verdict;

pub use saturate::{saturate, Limits, LimitKind, Outcome, ResourceLimit, Strategy};
pub use verdict::{decide, rank_table_string, write_rank_table, ConclusionStatus, ConclusionVerdict, Verdict};

pub use crate::trace::RuleId;

use smallvec::SmallVec;

use crate::state::SaturationState;
use crate::trace::{Bound, StepId, StepKind};
use crate::universe::PointSet;

/// Applies a single rule to the ordered pair `(x, y)`.
///
/// Returns whether an interval changed. Nothing happens when the state is
/// already contradictory or `x == y`.
pub fn apply_rule(state: &mut SaturationState, rule: RuleId, x: PointSet, y: PointSet) -> bool {
    if x == y || state.is_contradictory() {
        return false;
    }
    state.try_rule(rule, x.bits(), y.bits(), &mut |_, _| {})
}

impl SaturationState {
    #[inline(always)]
    fn lo_at(&self, s: u32) -> i32 {
        self.table[s as usize].lo as i32
    }

    #[inline(always)]
    fn hi_at(&self, s: u32) -> i32 {
        self.table[s as usize].hi as i32
    }

    #[inline(always)]
    fn lo_src(&self, s: u32) -> StepId {
        self.sources[s as usize][0]
    }

    #[inline(always)]
    fn hi_src(&self, s: u32) -> StepId {
        self.sources[s as usize][1]
    }

    /// Evaluates `rule` on `(x, y)` and applies it on strict improvement.
    /// `notify` receives the target and the narrowed bound.
    #[inline(always)]
    pub(crate) fn try_rule<F: FnMut(u32, Bound)>(
        &mut self,
        rule: RuleId,
        x: u32,
        y: u32,
        notify: &mut F,
    ) -> bool {
        let u = x | y;
        let i = x & y;
        let (target, candidate) = match rule {
            RuleId::Rs1 if i == x => (y, self.lo_at(x)),
            RuleId::Rs2 if i == y => (x, self.lo_at(y)),
            RuleId::Rs3 if i == x => (x, self.hi_at(y)),
            RuleId::Rs4 if i == y => (y, self.hi_at(x)),
            RuleId::Rs5 => (u, self.hi_at(x) + self.hi_at(y) - self.lo_at(i)),
            RuleId::Rs6 => (i, self.hi_at(x) + self.hi_at(y) - self.lo_at(u)),
            RuleId::Rs7 => (x, self.lo_at(i) + self.lo_at(u) - self.hi_at(y)),
            RuleId::Rs8 => (y, self.lo_at(i) + self.lo_at(u) - self.hi_at(x)),
            _ => return false,
        };
        let bound = rule.bound();
        let current = self.table[target as usize];
        let improves = match bound {
            Bound::Lo => candidate > current.lo as i32,
            Bound::Hi => candidate < current.hi as i32,
        };
        if !improves {
            return false;
        }
        let mut deps: SmallVec<[StepId; 4]> = match rule {
            RuleId::Rs1 => [self.lo_src(x)].into_iter().collect(),
            RuleId::Rs2 => [self.lo_src(y)].into_iter().collect(),
            RuleId::Rs3 => [self.hi_src(y)].into_iter().collect(),
            RuleId::Rs4 => [self.hi_src(x)].into_iter().collect(),
            RuleId::Rs5 => [self.hi_src(x), self.hi_src(y), self.lo_src(i)].into_iter().collect(),
            RuleId::Rs6 => [self.hi_src(x), self.hi_src(y), self.lo_src(u)].into_iter().collect(),
            RuleId::Rs7 => [self.lo_src(i), self.lo_src(u), self.hi_src(y)].into_iter().collect(),
            RuleId::Rs8 => [self.lo_src(i), self.lo_src(u), self.hi_src(x)].into_iter().collect(),
        };
        deps.sort_unstable();
        deps.dedup();
        let value = candidate.clamp(i8::MIN as i32, i8::MAX as i32) as i8;
        let mut new = current;
        match bound {
            Bound::Lo => new.lo = value,
            Bound::Hi => new.hi = value,
        }
        let target_set = PointSet::from_bits(target);
        self.record(
            StepKind::Rule(rule),
            PointSet::from_bits(x),
            PointSet::from_bits(y),
            target_set,
            new,
            deps,
        );
        notify(target, bound);
        true
    }

    /// Whether some rule would narrow an interval on the current table.
    /// Most pairs fire nothing, and if none fires nothing changes, so this
    /// check is exact as a filter.
    #[inline(always)]
    fn any_rule_fires(&self, x: u32, y: u32) -> bool {
        let (u, i) = (x | y, x & y);
        let (lx, hx) = (self.lo_at(x), self.hi_at(x));
        let (ly, hy) = (self.lo_at(y), self.hi_at(y));
        let (li, hi) = (self.lo_at(i), self.hi_at(i));
        let (lu, hu) = (self.lo_at(u), self.hi_at(u));
        let sub = if i == x {
            lx > ly || hy < hx
        } else if i == y {
            ly > lx || hx < hy
        } else {
            false
        };
        sub || hx + hy - li < hu
            || hx + hy - lu < hi
            || li + lu - hy > lx
            || li + lu - hx > ly
    }

    /// Runs RS1..RS8 in order on `(x, y)`, stopping at a contradiction.
    #[inline(always)]
    pub(crate) fn scan_pair<F: FnMut(u32, Bound)>(&mut self, x: u32, y: u32, notify: &mut F) -> bool {
        if !self.any_rule_fires(x, y) {
            return false;
        }
        let mut changed = false;
        for rule in RuleId::ALL {
            if self.try_rule(rule, x, y, notify) {
                changed = true;
                if self.contradiction.is_some() {
                    break;
                }
            }
        }
        changed
    }
}
