//! Replay checker for certificates.
//!
//! The checker rebuilds the initial table from the statement and re-executes
//! each step with its own copy of the rule arithmetic. It shares no code
//! with the saturation engine beyond the basic set and interval types.

use std::collections::HashMap;
use std::fmt;

use super::{statement_digest, CertStep, CertStepKind, Certificate, Goal, FORMAT_VERSION};
use crate::engine::ConclusionStatus;
use crate::statement::{Relation, Statement};
use crate::trace::{RuleId, StepId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvalidReason {
    /// A claimed bound differs from what the rule computes, or the rule
    /// does not apply to its operands.
    BadArithmetic,
    /// The rule would not narrow its target.
    NotAnImprovement,
    /// A dependency refers to the step itself or a later one.
    DepCycle,
    /// The dependencies are not the steps that set the bounds used.
    DepMismatch,
    /// A lemma's goal is not what its steps establish.
    GoalMismatch,
    /// Verdicts disagree with the statement or the replayed table.
    VerdictMismatch,
    /// The header does not describe the statement being checked.
    HashMismatch,
    /// Structurally wrong: unexpected ids, versions or step shapes.
    Malformed,
}

impl InvalidReason {
    pub fn keyword(self) -> &'static str {
        match self {
            InvalidReason::BadArithmetic => "bad-arithmetic",
            InvalidReason::NotAnImprovement => "not-an-improvement",
            InvalidReason::DepCycle => "dep-cycle",
            InvalidReason::DepMismatch => "dep-mismatch",
            InvalidReason::GoalMismatch => "goal-mismatch",
            InvalidReason::VerdictMismatch => "verdict-mismatch",
            InvalidReason::HashMismatch => "hash-mismatch",
            InvalidReason::Malformed => "malformed",
        }
    }
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidCertificate {
    /// The first failing step, if the failure is tied to one.
    pub step: Option<StepId>,
    pub reason: InvalidReason,
    pub detail: String,
}

impl fmt::Display for InvalidCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(id) => write!(f, "step {id}: {} ({})", self.reason, self.detail),
            None => write!(f, "{} ({})", self.reason, self.detail),
        }
    }
}

impl std::error::Error for InvalidCertificate {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSummary {
    pub steps: usize,
    pub lemmas: usize,
    pub contradiction: bool,
    pub statuses: Vec<ConclusionStatus>,
}

fn fail(step: Option<StepId>, reason: InvalidReason, detail: impl Into<String>) -> InvalidCertificate {
    InvalidCertificate {
        step,
        reason,
        detail: detail.into(),
    }
}

/// Replays `cert` against `stmt`.
pub fn check_certificate(
    cert: &Certificate,
    stmt: &Statement,
) -> Result<CheckSummary, InvalidCertificate> {
    use InvalidReason::*;

    let h = &cert.header;
    if h.version != FORMAT_VERSION {
        return Err(fail(None, Malformed, format!("unsupported version {}", h.version)));
    }
    if h.dim != stmt.dimension() || h.points != stmt.universe().names() {
        return Err(fail(None, HashMismatch, "header universe differs from the statement"));
    }
    if h.stmt_sha256 != statement_digest(stmt) {
        return Err(fail(None, HashMismatch, "statement digest differs"));
    }

    let mut replay = Replay {
        cap: stmt.dimension() as i32 + 1,
        full: stmt.universe().full_set().bits(),
        bounds: HashMap::new(),
        sources: HashMap::new(),
    };
    let mut next_id: StepId = 1;
    let mut bottom = false;
    for (k, lemma) in cert.lemmas.iter().enumerate() {
        if bottom {
            return Err(fail(None, Malformed, "lemma after a contradiction"));
        }
        if lemma.steps.is_empty() {
            return Err(fail(None, Malformed, format!("lemma {k} has no steps")));
        }
        for step in &lemma.steps {
            if bottom {
                return Err(fail(Some(step.id), Malformed, "step after a contradiction"));
            }
            if step.id != next_id {
                return Err(fail(Some(step.id), Malformed, format!("expected id {next_id}")));
            }
            next_id += 1;
            replay.step(stmt, step)?;
            bottom = replay.get(step.target.bits()).0 > replay.get(step.target.bits()).1;
        }
        let last = lemma.steps.last().expect("nonempty").id;
        match lemma.goal {
            Goal::Bottom if bottom => {}
            Goal::Bound { set, interval } if !bottom => {
                let (lo, hi) = replay.get(set.bits());
                if (lo, hi) != (interval.lo as i32, interval.hi as i32) {
                    return Err(fail(
                        Some(last),
                        GoalMismatch,
                        format!("lemma {k} claims [{}, {}], replay gives [{lo}, {hi}]", interval.lo, interval.hi),
                    ));
                }
            }
            _ => return Err(fail(Some(last), GoalMismatch, format!("lemma {k} goal"))),
        }
    }

    let mut statuses = Vec::new();
    if bottom {
        if !cert.verdicts.is_empty() {
            return Err(fail(None, VerdictMismatch, "verdicts after a contradiction"));
        }
    } else {
        let conclusions = stmt.conclusions();
        if cert.verdicts.len() != conclusions.len() {
            return Err(fail(
                None,
                VerdictMismatch,
                format!("{} verdicts for {} conclusions", cert.verdicts.len(), conclusions.len()),
            ));
        }
        for (i, (v, c)) in cert.verdicts.iter().zip(conclusions).enumerate() {
            if v.set != c.set || v.relation != c.relation || v.value != c.value {
                return Err(fail(None, VerdictMismatch, format!("verdict {i} names another conclusion")));
            }
            let (lo, hi) = replay.get(c.set.bits());
            let status = status_of(c.relation, c.value as i32, lo, hi);
            if status != v.status {
                return Err(fail(
                    None,
                    VerdictMismatch,
                    format!("verdict {i} claims {}, replay gives {}", v.status.keyword(), status.keyword()),
                ));
            }
            statuses.push(status);
        }
    }
    Ok(CheckSummary {
        steps: (next_id - 1) as usize,
        lemmas: cert.lemmas.len(),
        contradiction: bottom,
        statuses,
    })
}

fn status_of(relation: Relation, v: i32, lo: i32, hi: i32) -> ConclusionStatus {
    let (entailed, excluded) = match relation {
        Relation::Eq => (lo == v && hi == v, v < lo || v > hi),
        Relation::Le => (hi <= v, lo > v),
        Relation::Ge => (lo >= v, hi < v),
    };
    if entailed {
        ConclusionStatus::Proved
    } else if excluded {
        ConclusionStatus::Refuted
    } else {
        ConclusionStatus::Unknown
    }
}

const LO: u8 = 0;
const HI: u8 = 1;

struct Replay {
    cap: i32,
    full: u32,
    bounds: HashMap<u32, (i32, i32)>,
    sources: HashMap<(u32, u8), StepId>,
}

impl Replay {
    fn get(&self, s: u32) -> (i32, i32) {
        match self.bounds.get(&s) {
            Some(&b) => b,
            None if s == 0 => (0, 0),
            None => (1, (s.count_ones() as i32).min(self.cap)),
        }
    }

    fn lo(&self, s: u32) -> i32 {
        self.get(s).0
    }

    fn hi(&self, s: u32) -> i32 {
        self.get(s).1
    }

    fn src(&self, s: u32, b: u8) -> StepId {
        self.sources.get(&(s, b)).copied().unwrap_or(0)
    }

    fn set(&mut self, id: StepId, s: u32, value: (i32, i32)) {
        let old = self.get(s);
        if value.0 != old.0 {
            self.sources.insert((s, LO), id);
        }
        if value.1 != old.1 {
            self.sources.insert((s, HI), id);
        }
        self.bounds.insert(s, value);
    }

    fn step(&mut self, stmt: &Statement, step: &CertStep) -> Result<(), InvalidCertificate> {
        use InvalidReason::*;
        let id = Some(step.id);
        let (x, y, t) = (step.x.bits(), step.y.bits(), step.target.bits());
        if (x | y | t) & !self.full != 0 {
            return Err(fail(id, Malformed, "set outside the universe"));
        }
        if let Some(&d) = step.deps.iter().find(|&&d| d >= step.id) {
            return Err(fail(id, DepCycle, format!("depends on step {d}")));
        }
        let current = self.get(t);
        if (step.old.lo as i32, step.old.hi as i32) != current {
            return Err(fail(
                id,
                BadArithmetic,
                format!("old [{}, {}] but table has [{}, {}]", step.old.lo, step.old.hi, current.0, current.1),
            ));
        }
        let claimed = (step.new.lo as i32, step.new.hi as i32);

        let rule = match step.kind {
            CertStepKind::Hypothesis => {
                if y != 0 || x != t || !step.deps.is_empty() {
                    return Err(fail(id, Malformed, "hypothesis step shape"));
                }
                let matches = stmt.hypotheses().iter().any(|h| {
                    if h.set.bits() != t {
                        return false;
                    }
                    let v = h.value as i32;
                    let narrowed = match h.relation {
                        Relation::Eq => (current.0.max(v), current.1.min(v)),
                        Relation::Le => (current.0, current.1.min(v)),
                        Relation::Ge => (current.0.max(v), current.1),
                    };
                    narrowed == claimed
                });
                if !matches {
                    return Err(fail(id, BadArithmetic, "no hypothesis yields this interval"));
                }
                self.set(step.id, t, claimed);
                return Ok(());
            }
            CertStepKind::Rule(r) => r,
        };

        if x == y {
            return Err(fail(id, Malformed, "identical operands"));
        }
        let (u, i) = (x | y, x & y);
        let x_in_y = x & !y == 0;
        let y_in_x = y & !x == 0;
        // (target, lowers the upper bound, candidate, bounds read as (set, bound))
        let (target, upper, candidate, inputs): (u32, bool, i32, Vec<(u32, u8)>) = match rule {
            RuleId::Rs1 if x_in_y => (y, false, self.lo(x), vec![(x, LO)]),
            RuleId::Rs2 if y_in_x => (x, false, self.lo(y), vec![(y, LO)]),
            RuleId::Rs3 if x_in_y => (x, true, self.hi(y), vec![(y, HI)]),
            RuleId::Rs4 if y_in_x => (y, true, self.hi(x), vec![(x, HI)]),
            RuleId::Rs5 => (
                u,
                true,
                self.hi(x) + self.hi(y) - self.lo(i),
                vec![(x, HI), (y, HI), (i, LO)],
            ),
            RuleId::Rs6 => (
                i,
                true,
                self.hi(x) + self.hi(y) - self.lo(u),
                vec![(x, HI), (y, HI), (u, LO)],
            ),
            RuleId::Rs7 => (
                x,
                false,
                self.lo(i) + self.lo(u) - self.hi(y),
                vec![(i, LO), (u, LO), (y, HI)],
            ),
            RuleId::Rs8 => (
                y,
                false,
                self.lo(i) + self.lo(u) - self.hi(x),
                vec![(i, LO), (u, LO), (x, HI)],
            ),
            _ => return Err(fail(id, BadArithmetic, format!("{} needs a subset relation", rule.name()))),
        };
        if target != t {
            return Err(fail(id, BadArithmetic, format!("{} does not narrow this set", rule.name())));
        }
        let improves = if upper {
            candidate < current.1
        } else {
            candidate > current.0
        };
        if !improves {
            return Err(fail(id, NotAnImprovement, format!("{} yields {candidate}", rule.name())));
        }
        let expected = if upper {
            (current.0, candidate)
        } else {
            (candidate, current.1)
        };
        if claimed != expected {
            return Err(fail(
                id,
                BadArithmetic,
                format!(
                    "claims [{}, {}], {} gives [{}, {}]",
                    claimed.0, claimed.1, rule.name(), expected.0, expected.1
                ),
            ));
        }
        let mut deps: Vec<StepId> = inputs.iter().map(|&(s, b)| self.src(s, b)).collect();
        deps.sort_unstable();
        deps.dedup();
        if deps != step.deps {
            return Err(fail(id, DepMismatch, format!("expected deps {deps:?}")));
        }
        self.set(step.id, t, claimed);
        Ok(())
    }
}
