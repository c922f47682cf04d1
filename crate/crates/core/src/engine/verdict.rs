use std::fmt;
use std::io::{self, Write};

use crate::interval::RankInterval;
use crate::state::SaturationState;
use crate::statement::{RankConstraint, Statement};
use crate::universe::{PointSet, PointUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConclusionStatus {
    /// The final interval entails the conclusion.
    Proved,
    /// The final interval neither entails nor excludes it.
    Unknown,
    /// The final interval excludes the conclusion: asserting it would
    /// contradict the hypotheses.
    Refuted,
}

impl ConclusionStatus {
    pub fn of(conclusion: &RankConstraint, interval: RankInterval) -> Self {
        if conclusion.is_entailed_by(interval) {
            ConclusionStatus::Proved
        } else if conclusion.is_excluded_by(interval) {
            ConclusionStatus::Refuted
        } else {
            ConclusionStatus::Unknown
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ConclusionStatus::Proved => "proved",
            ConclusionStatus::Unknown => "unknown",
            ConclusionStatus::Refuted => "refuted-by-contradiction",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "proved" => Some(ConclusionStatus::Proved),
            "unknown" => Some(ConclusionStatus::Unknown),
            "refuted-by-contradiction" => Some(ConclusionStatus::Refuted),
            _ => None,
        }
    }
}

impl fmt::Display for ConclusionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConclusionStatus::Proved => "PROVED",
            ConclusionStatus::Unknown => "UNKNOWN",
            ConclusionStatus::Refuted => "REFUTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConclusionVerdict {
    pub conclusion: RankConstraint,
    pub status: ConclusionStatus,
    pub interval: RankInterval,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub conclusions: Vec<ConclusionVerdict>,
}

impl Verdict {
    /// All conclusions proved (conjunction).
    pub fn is_proved(&self) -> bool {
        self.conclusions
            .iter()
            .all(|c| c.status == ConclusionStatus::Proved)
    }
}

/// Reads the status of each conclusion off a saturated table.
pub fn decide(state: &SaturationState, stmt: &Statement) -> Verdict {
    Verdict {
        conclusions: stmt
            .conclusions()
            .iter()
            .map(|c| {
                let interval = state.interval(c.set);
                ConclusionVerdict {
                    conclusion: *c,
                    status: ConclusionStatus::of(c, interval),
                    interval,
                }
            })
            .collect(),
    }
}

/// Writes one line per subset in ascending bitmask order:
/// `P1 P2 … : lo hi`, names padded to a common width so the bounds line up.
/// The empty set is written `∅: 0 0`.
pub fn write_rank_table<W: Write>(
    state: &SaturationState,
    universe: &PointUniverse,
    mut out: W,
) -> io::Result<()> {
    let width = universe.display_set(universe.full_set()).to_string().chars().count();
    let mut line = String::new();
    for (bits, iv) in state.table().iter().enumerate() {
        let set = PointSet::from_bits(bits as u32);
        line.clear();
        if set.is_empty() {
            line.push('∅');
        } else {
            let mut len = 0;
            for (k, name) in universe.names_of(set).into_iter().enumerate() {
                if k > 0 {
                    line.push(' ');
                    len += 1;
                }
                line.push_str(name);
                len += name.chars().count();
            }
            line.extend(std::iter::repeat_n(' ', width - len + 1));
        }
        writeln!(out, "{line}: {} {}", iv.lo, iv.hi)?;
    }
    Ok(())
}

pub fn rank_table_string(state: &SaturationState, universe: &PointUniverse) -> String {
    let mut buf = Vec::new();
    write_rank_table(state, universe, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("names are UTF-8")
}
