//! Rank constraints and statements built from them.

use std::fmt;

use crate::error::StatementError;
use crate::interval::RankInterval;
use crate::universe::{PointSet, PointUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `rk(X) = v`, written `:` in statement files.
    Eq,
    /// `rk(X) <= v`
    Le,
    /// `rk(X) >= v`
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => ":",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }

    /// Keyword used in certificates.
    pub fn keyword(self) -> &'static str {
        match self {
            Relation::Eq => "eq",
            Relation::Le => "le",
            Relation::Ge => "ge",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Relation> {
        match s {
            "eq" => Some(Relation::Eq),
            "le" => Some(Relation::Le),
            "ge" => Some(Relation::Ge),
            _ => None,
        }
    }

    pub fn holds(self, rank: u32, value: u32) -> bool {
        match self {
            Relation::Eq => rank == value,
            Relation::Le => rank <= value,
            Relation::Ge => rank >= value,
        }
    }

    /// Narrows `interval` by this relation with `value`.
    pub fn narrow(self, interval: RankInterval, value: u32) -> RankInterval {
        let v = value.min(i8::MAX as u32) as i8;
        match self {
            Relation::Eq => interval.meet(RankInterval::exact(v)),
            Relation::Le => RankInterval::new(interval.lo, interval.hi.min(v)),
            Relation::Ge => RankInterval::new(interval.lo.max(v), interval.hi),
        }
    }
}

/// `rk(set) <relation> value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankConstraint {
    pub set: PointSet,
    pub relation: Relation,
    pub value: u32,
}

impl RankConstraint {
    pub fn new(set: PointSet, relation: Relation, value: u32) -> Self {
        RankConstraint {
            set,
            relation,
            value,
        }
    }

    pub fn eq(set: PointSet, value: u32) -> Self {
        Self::new(set, Relation::Eq, value)
    }

    /// Whether an interval guarantees this constraint.
    pub fn is_entailed_by(&self, interval: RankInterval) -> bool {
        let v = self.value as i32;
        match self.relation {
            Relation::Eq => interval.lo as i32 == v && interval.hi as i32 == v,
            Relation::Le => interval.hi as i32 <= v,
            Relation::Ge => interval.lo as i32 >= v,
        }
    }

    /// Whether an interval rules this constraint out entirely.
    pub fn is_excluded_by(&self, interval: RankInterval) -> bool {
        let v = self.value as i32;
        match self.relation {
            Relation::Eq => v < interval.lo as i32 || v > interval.hi as i32,
            Relation::Le => v < interval.lo as i32,
            Relation::Ge => v > interval.hi as i32,
        }
    }

    pub fn display<'a>(&'a self, universe: &'a PointUniverse) -> ConstraintDisplay<'a> {
        ConstraintDisplay {
            constraint: self,
            universe,
        }
    }
}

pub struct ConstraintDisplay<'a> {
    constraint: &'a RankConstraint,
    universe: &'a PointUniverse,
}

impl fmt::Display for ConstraintDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.universe.display_set(self.constraint.set),
            self.constraint.relation.symbol(),
            self.constraint.value
        )
    }
}

/// Hypotheses and a conjunction of conclusions over a named universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    universe: PointUniverse,
    hypotheses: Vec<RankConstraint>,
    conclusions: Vec<RankConstraint>,
}

impl Statement {
    /// Checks that every constraint is on a nonempty set of known points and
    /// that there is at least one conclusion.
    ///
    /// Rank values above the dimension cap are accepted here; they make the
    /// hypotheses inconsistent rather than the statement malformed. The
    /// statement parser rejects them.
    pub fn new(
        universe: PointUniverse,
        hypotheses: Vec<RankConstraint>,
        conclusions: Vec<RankConstraint>,
    ) -> Result<Self, StatementError> {
        if conclusions.is_empty() {
            return Err(StatementError::NoConclusion);
        }
        for c in hypotheses.iter().chain(&conclusions) {
            if c.set.is_empty() {
                return Err(StatementError::EmptyConstraintSet);
            }
            if !universe.contains_set(c.set) {
                return Err(StatementError::SetOutOfRange);
            }
        }
        Ok(Statement {
            universe,
            hypotheses,
            conclusions,
        })
    }

    pub fn universe(&self) -> &PointUniverse {
        &self.universe
    }

    pub fn dimension(&self) -> u32 {
        self.universe.dimension()
    }

    pub fn hypotheses(&self) -> &[RankConstraint] {
        &self.hypotheses
    }

    pub fn conclusions(&self) -> &[RankConstraint] {
        &self.conclusions
    }

    /// Replaces the conclusions, keeping universe and hypotheses.
    pub fn with_conclusions(
        &self,
        conclusions: Vec<RankConstraint>,
    ) -> Result<Statement, StatementError> {
        Statement::new(self.universe.clone(), self.hypotheses.clone(), conclusions)
    }

    /// Replaces the hypotheses, keeping universe and conclusions.
    pub fn with_hypotheses(
        &self,
        hypotheses: Vec<RankConstraint>,
    ) -> Result<Statement, StatementError> {
        Statement::new(self.universe.clone(), hypotheses, self.conclusions.clone())
    }

    /// Renames points: old index `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Statement {
        let map = |c: &RankConstraint| RankConstraint {
            set: c.set.permuted(perm),
            ..*c
        };
        Statement {
            universe: self.universe.permuted(perm),
            hypotheses: self.hypotheses.iter().map(map).collect(),
            conclusions: self.conclusions.iter().map(map).collect(),
        }
    }
}
