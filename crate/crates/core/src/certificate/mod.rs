//! Certificates: pruned, replayable records of a saturation run.
//!
//! A certificate keeps only the steps that some conclusion (or the final
//! contradiction) depends on, renumbered from 1. Id 0 stands for the
//! initial table, which every checker rebuilds on its own. Steps are split
//! into consecutive lemmas, each closing at the last step that narrows its
//! goal set, so there is one lemma per distinct target set.

mod check;
mod format;

pub use check::{check_certificate, CheckSummary, InvalidCertificate, InvalidReason};
pub use format::{parse_certificate, write_certificate, CertificateParseError};

use std::collections::HashMap;

use sha2::{Digest, Sha256};

use crate::engine::{Strategy, ConclusionStatus};
use crate::interval::RankInterval;
use crate::parser::print_statement;
use crate::state::{initial_interval, SaturationState};
use crate::statement::{Relation, Statement};
use crate::trace::{Bound, RuleId, StepId, StepKind, INIT_STEP};
use crate::universe::PointSet;

/// Version of the certificate format written by this crate.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateHeader {
    pub version: u32,
    pub tool: String,
    pub dim: u32,
    pub points: Vec<String>,
    /// Hex SHA-256 of the statement in canonical printed form.
    pub stmt_sha256: String,
    pub strategy: String,
    /// Wall-clock time of the run that produced the certificate. Not
    /// checked, and the only field that differs between reruns.
    pub elapsed_ms: u64,
    /// Whether steps were written while saturation was still running.
    pub streamed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStepKind {
    Hypothesis,
    Rule(RuleId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertStep {
    pub id: StepId,
    pub kind: CertStepKind,
    pub x: PointSet,
    pub y: PointSet,
    pub target: PointSet,
    pub old: RankInterval,
    pub new: RankInterval,
    pub deps: Vec<StepId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    /// The interval reached for a set by the end of the lemma.
    Bound { set: PointSet, interval: RankInterval },
    /// The lemma ends with an empty interval.
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma {
    pub goal: Goal,
    pub steps: Vec<CertStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictRecord {
    pub set: PointSet,
    pub relation: Relation,
    pub value: u32,
    pub status: ConclusionStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub header: CertificateHeader,
    pub lemmas: Vec<Lemma>,
    /// Empty for contradiction certificates.
    pub verdicts: Vec<VerdictRecord>,
}

impl Certificate {
    pub fn steps(&self) -> impl Iterator<Item = &CertStep> {
        self.lemmas.iter().flat_map(|l| l.steps.iter())
    }

    pub fn step_count(&self) -> usize {
        self.lemmas.iter().map(|l| l.steps.len()).sum()
    }

    pub fn rule_step_count(&self) -> usize {
        self.steps()
            .filter(|s| matches!(s.kind, CertStepKind::Rule(_)))
            .count()
    }

    pub fn is_contradiction(&self) -> bool {
        self.lemmas.last().is_some_and(|l| l.goal == Goal::Bottom)
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        write_certificate(self, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("names are UTF-8")
    }
}

/// Hex SHA-256 of the canonical text of `stmt`.
pub fn statement_digest(stmt: &Statement) -> String {
    let digest = Sha256::digest(print_statement(stmt).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn header_for(stmt: &Statement, strategy: Option<Strategy>) -> CertificateHeader {
    CertificateHeader {
        version: FORMAT_VERSION,
        tool: concat!("rankprover ", env!("CARGO_PKG_VERSION")).to_string(),
        dim: stmt.dimension(),
        points: stmt.universe().names().to_vec(),
        stmt_sha256: statement_digest(stmt),
        strategy: strategy.map_or("none", Strategy::name).to_string(),
        elapsed_ms: 0,
        streamed: false,
    }
}

/// The pruned certificate of a finished saturation run.
pub fn extract_certificate(state: &SaturationState, stmt: &Statement) -> Certificate {
    build(state, stmt, true)
}

/// A certificate keeping every recorded step.
pub fn extract_full_certificate(state: &SaturationState, stmt: &Statement) -> Certificate {
    build(state, stmt, false)
}

fn build(state: &SaturationState, stmt: &Statement, prune: bool) -> Certificate {
    let trace = state.trace();
    let contradiction = state.contradiction_step().map(|s| (s.id, s.target));
    // Nothing is recorded after a contradiction, so it is the last step.
    let end = trace.len();

    let mut keep = vec![!prune; end];
    if prune {
        let mut stack: Vec<StepId> = match contradiction {
            Some((id, t)) => vec![id, state.source(t, Bound::Lo), state.source(t, Bound::Hi)],
            None => stmt
                .conclusions()
                .iter()
                .flat_map(|c| [state.source(c.set, Bound::Lo), state.source(c.set, Bound::Hi)])
                .collect(),
        };
        while let Some(id) = stack.pop() {
            let slot = &mut keep[id as usize];
            if !*slot {
                *slot = true;
                stack.extend(trace[id as usize].deps.iter().copied());
            }
        }
    }
    keep[INIT_STEP as usize] = false;

    let kept: Vec<usize> = (0..end).filter(|&i| keep[i]).collect();
    let mut renumber = vec![INIT_STEP; end];
    for (k, &i) in kept.iter().enumerate() {
        renumber[i] = k as StepId + 1;
    }
    let mut last_for: HashMap<PointSet, usize> = HashMap::new();
    for (k, &i) in kept.iter().enumerate() {
        last_for.insert(trace[i].target, k);
    }

    // Replay the kept steps so `old` reflects the pruned history.
    let cap = stmt.universe().rank_cap();
    let mut table: HashMap<PointSet, RankInterval> = HashMap::new();
    let mut lemmas = Vec::new();
    let mut steps = Vec::new();
    for (k, &i) in kept.iter().enumerate() {
        let step = &trace[i];
        let old = *table
            .entry(step.target)
            .or_insert_with(|| initial_interval(step.target, cap));
        let (kind, new) = match step.kind {
            StepKind::Hypothesis(h) => {
                let c = &stmt.hypotheses()[h];
                (CertStepKind::Hypothesis, c.relation.narrow(old, c.value))
            }
            StepKind::Rule(rule) => {
                let mut new = old;
                match rule.bound() {
                    Bound::Lo => new.lo = step.new.lo,
                    Bound::Hi => new.hi = step.new.hi,
                }
                (CertStepKind::Rule(rule), new)
            }
            StepKind::Init => unreachable!("the init step is never kept"),
        };
        table.insert(step.target, new);
        steps.push(CertStep {
            id: renumber[i],
            kind,
            x: step.x,
            y: step.y,
            target: step.target,
            old,
            new,
            deps: step.deps.iter().map(|&d| renumber[d as usize]).collect(),
        });
        if last_for[&step.target] == k {
            let goal = if new.is_contradictory() {
                Goal::Bottom
            } else {
                Goal::Bound {
                    set: step.target,
                    interval: new,
                }
            };
            lemmas.push(Lemma {
                goal,
                steps: std::mem::take(&mut steps),
            });
        }
    }
    debug_assert!(steps.is_empty());

    let verdicts = if contradiction.is_some() {
        Vec::new()
    } else {
        stmt.conclusions()
            .iter()
            .map(|c| VerdictRecord {
                set: c.set,
                relation: c.relation,
                value: c.value,
                status: ConclusionStatus::of(c, state.interval(c.set)),
            })
            .collect()
    };
    Certificate {
        header: header_for(stmt, state.strategy()),
        lemmas,
        verdicts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{saturate, Limits};
    use crate::parser::parse_statement;
    use crate::state::init_state;

    fn run(text: &str) -> (Statement, SaturationState) {
        let stmt = parse_statement(text, 3).unwrap();
        let mut state = SaturationState::initialize(&stmt);
        saturate(&mut state, Strategy::Worklist, Limits::default()).unwrap();
        (stmt, state)
    }

    #[test]
    fn verbatim_hypothesis_needs_no_rules() {
        let (stmt, state) = run("points A B C hypotheses A B C : 3 conclusion A B C : 3");
        let cert = extract_certificate(&state, &stmt);
        assert_eq!(cert.step_count(), 1);
        assert_eq!(cert.rule_step_count(), 0);
        assert_eq!(cert.lemmas.len(), 1);
        assert_eq!(cert.verdicts[0].status, ConclusionStatus::Proved);
    }

    #[test]
    fn pruning_keeps_fewer_steps() {
        let (stmt, state) = run(
            "points A B C M hypotheses A B C : 3 A B M : 2 conclusion A B C M : 3",
        );
        let pruned = extract_certificate(&state, &stmt);
        let full = extract_full_certificate(&state, &stmt);
        assert!(pruned.step_count() < full.step_count());
        assert_eq!(full.step_count(), state.trace().len() - 1);
        assert_eq!(pruned.verdicts, full.verdicts);
        let last = pruned.lemmas.last().unwrap();
        assert_eq!(
            last.goal,
            Goal::Bound {
                set: stmt.conclusions()[0].set,
                interval: RankInterval::exact(3)
            }
        );
    }

    #[test]
    fn ids_are_consecutive_and_deps_point_back() {
        let (stmt, state) = run(
            "points A B C M hypotheses A B C : 3 A B M : 2 conclusion A B C M : 3",
        );
        let cert = extract_certificate(&state, &stmt);
        for (k, s) in cert.steps().enumerate() {
            assert_eq!(s.id as usize, k + 1);
            assert!(s.deps.iter().all(|&d| d < s.id));
        }
    }

    #[test]
    fn contradiction_ends_in_bottom() {
        let (stmt, state) = run("points A B C hypotheses A B C : 3 A B : 1 conclusion A : 1");
        let cert = extract_certificate(&state, &stmt);
        assert!(cert.is_contradiction());
        assert!(cert.verdicts.is_empty());
        assert!(cert.steps().last().unwrap().new.is_contradictory());
    }

    #[test]
    fn digest_ignores_formatting() {
        let a = parse_statement("points A B hypotheses A B : 2 conclusion A B : 2", 3).unwrap();
        let b = parse_statement(
            "# same statement\ndimension 3\npoints\n  A B\nhypotheses\n  A B : 2\nconclusion A B : 2\n",
            3,
        )
        .unwrap();
        assert_eq!(statement_digest(&a), statement_digest(&b));
        assert_eq!(statement_digest(&a).len(), 64);
        assert!(init_state(&a).is_ok());
    }
}
