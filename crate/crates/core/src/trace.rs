//! Records of individual narrowing steps.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::interval::RankInterval;
use crate::universe::PointSet;

pub type StepId = u32;

/// The id of the initialization step every trace starts with.
pub const INIT_STEP: StepId = 0;

/// The eight narrowing rules, numbered as in the classical presentation of
/// rank saturation (RS1..RS8).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// `X ⊆ Y`: raise `lo(Y)` to `lo(X)`.
    Rs1,
    /// `Y ⊆ X`: raise `lo(X)` to `lo(Y)`.
    Rs2,
    /// `X ⊆ Y`: lower `hi(X)` to `hi(Y)`.
    Rs3,
    /// `Y ⊆ X`: lower `hi(Y)` to `hi(X)`.
    Rs4,
    /// `hi(X ∪ Y) <= hi(X) + hi(Y) - lo(X ∩ Y)`
    Rs5,
    /// `hi(X ∩ Y) <= hi(X) + hi(Y) - lo(X ∪ Y)`
    Rs6,
    /// `lo(X) >= lo(X ∩ Y) + lo(X ∪ Y) - hi(Y)`
    Rs7,
    /// `lo(Y) >= lo(X ∩ Y) + lo(X ∪ Y) - hi(X)`
    Rs8,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::Rs1,
        RuleId::Rs2,
        RuleId::Rs3,
        RuleId::Rs4,
        RuleId::Rs5,
        RuleId::Rs6,
        RuleId::Rs7,
        RuleId::Rs8,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn name(self) -> &'static str {
        ["RS1", "RS2", "RS3", "RS4", "RS5", "RS6", "RS7", "RS8"][self as usize]
    }

    /// Which bound of the target the rule narrows.
    pub fn bound(self) -> Bound {
        match self {
            RuleId::Rs1 | RuleId::Rs2 | RuleId::Rs7 | RuleId::Rs8 => Bound::Lo,
            RuleId::Rs3 | RuleId::Rs4 | RuleId::Rs5 | RuleId::Rs6 => Bound::Hi,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownRule(pub String);

impl fmt::Display for UnknownRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown rule `{}`", self.0)
    }
}

impl std::error::Error for UnknownRule {}

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Lo,
    Hi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Every set starts at `(1, min(|X|, d+1))`, the empty set at `(0, 0)`.
    Init,
    /// Application of the hypothesis with this index.
    Hypothesis(usize),
    Rule(RuleId),
}

/// One entry of a saturation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub id: StepId,
    pub kind: StepKind,
    pub x: PointSet,
    pub y: PointSet,
    pub target: PointSet,
    pub old: RankInterval,
    pub new: RankInterval,
    /// Steps that produced the input bounds this step read.
    pub deps: SmallVec<[StepId; 4]>,
}

impl TraceStep {
    pub fn rule(&self) -> Option<RuleId> {
        match self.kind {
            StepKind::Rule(r) => Some(r),
            _ => None,
        }
    }
}
