use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::state::SaturationState;
use crate::trace::Bound;

/// How pairs of sets are scheduled for rule evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Repeated passes over every unordered pair until a pass changes nothing.
    FullRescan,
    /// One full pass, then only pairs in which a changed set occurs as an
    /// operand, union or intersection.
    #[default]
    Worklist,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::FullRescan => "full",
            Strategy::Worklist => "worklist",
        }
    }

    pub fn from_name(s: &str) -> Option<Strategy> {
        match s {
            "full" | "full-rescan" => Some(Strategy::FullRescan),
            "worklist" => Some(Strategy::Worklist),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_passes: Option<u64>,
    pub max_duration: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Fixpoint,
    Contradiction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Passes,
    WallTime,
    /// More passes than the number of possible narrowings allows.
    PassCeiling,
}

/// Saturation was cut short. The state is left valid and partially narrowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("saturation stopped after {passes} passes: {kind:?} limit reached")]
pub struct ResourceLimit {
    pub kind: LimitKind,
    pub passes: u64,
}

struct Budget {
    start: Instant,
    limits: Limits,
    ceiling: u64,
}

impl Budget {
    fn check(&self, passes: u64) -> Result<(), ResourceLimit> {
        if passes > self.ceiling {
            return Err(ResourceLimit {
                kind: LimitKind::PassCeiling,
                passes,
            });
        }
        if self.limits.max_passes.is_some_and(|m| passes > m) {
            return Err(ResourceLimit {
                kind: LimitKind::Passes,
                passes,
            });
        }
        self.check_time(passes)
    }

    fn check_time(&self, passes: u64) -> Result<(), ResourceLimit> {
        match self.limits.max_duration {
            Some(max) if self.start.elapsed() > max => Err(ResourceLimit {
                kind: LimitKind::WallTime,
                passes,
            }),
            _ => Ok(()),
        }
    }
}

/// Applies the narrowing rules until nothing changes or an interval empties.
pub fn saturate(
    state: &mut SaturationState,
    strategy: Strategy,
    limits: Limits,
) -> Result<Outcome, ResourceLimit> {
    if state.is_contradictory() {
        return Ok(Outcome::Contradiction);
    }
    // Each of the 2^k intervals can narrow at most 2(d+1) times, and every
    // pass but the last narrows something. The worklist counts one "pass"
    // per processed set, each of which follows at least one narrowing.
    let size = state.table.len() as u64;
    let budget = Budget {
        start: Instant::now(),
        limits,
        ceiling: size * 2 * (state.rank_cap() as u64 + 1) + 1,
    };
    state.strategy = Some(strategy);
    let passes_before = state.pass_count;
    let result = match strategy {
        Strategy::FullRescan => full_rescan(state, &budget),
        Strategy::Worklist => worklist(state, &budget),
    };
    debug_assert!(state.pass_count >= passes_before);
    result
}

fn full_rescan(state: &mut SaturationState, budget: &Budget) -> Result<Outcome, ResourceLimit> {
    let size = state.table.len() as u32;
    loop {
        budget.check(state.pass_count + 1)?;
        state.pass_count += 1;
        let mut changed = false;
        for x in 0..size {
            for y in x + 1..size {
                if state.scan_pair(x, y, &mut |_, _| {}) {
                    changed = true;
                    if state.contradiction.is_some() {
                        return Ok(Outcome::Contradiction);
                    }
                }
            }
            if x & 0xff == 0 {
                budget.check_time(state.pass_count)?;
            }
        }
        if !changed {
            return Ok(Outcome::Fixpoint);
        }
    }
}

const QUEUED: u8 = 1;
/// The lower bound changed, so pairs having this set as union or
/// intersection must be revisited too.
const LO_CHANGED: u8 = 2;

struct Queue {
    order: VecDeque<u32>,
    flags: Vec<u8>,
}

impl Queue {
    fn push(&mut self, set: u32, bound: Bound) {
        let f = &mut self.flags[set as usize];
        if *f & QUEUED == 0 {
            self.order.push_back(set);
        }
        *f |= QUEUED;
        if bound == Bound::Lo {
            *f |= LO_CHANGED;
        }
    }
}

fn worklist(state: &mut SaturationState, budget: &Budget) -> Result<Outcome, ResourceLimit> {
    let size = state.table.len() as u32;
    let full = size - 1;
    let mut queue = Queue {
        order: VecDeque::new(),
        flags: vec![0; size as usize],
    };

    budget.check(state.pass_count + 1)?;
    state.pass_count += 1;
    for x in 0..size {
        for y in x + 1..size {
            state.scan_pair(x, y, &mut |t, b| queue.push(t, b));
            if state.contradiction.is_some() {
                return Ok(Outcome::Contradiction);
            }
        }
        if x & 0xff == 0 {
            budget.check_time(state.pass_count)?;
        }
    }

    macro_rules! visit {
        ($a:expr, $b:expr) => {{
            let (a, b) = ($a, $b);
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            state.scan_pair(a, b, &mut |t, bd| queue.push(t, bd));
            if state.contradiction.is_some() {
                return Ok(Outcome::Contradiction);
            }
        }};
    }

    while let Some(z) = queue.order.pop_front() {
        let flags = std::mem::take(&mut queue.flags[z as usize]);
        budget.check(state.pass_count + 1)?;
        state.pass_count += 1;

        // z as an operand.
        for w in 0..size {
            if w != z {
                visit!(z, w);
            }
        }
        if flags & LO_CHANGED == 0 {
            continue;
        }
        // z as the union of two proper subsets a < b.
        let mut a = (z - 1) & z;
        while a != 0 {
            let rest = z & !a;
            // b = rest | s for s ⊊ a
            let mut s = (a - 1) & a;
            loop {
                let b = rest | s;
                if a < b {
                    visit!(a, b);
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & a;
            }
            a = (a - 1) & z;
        }
        // z as the intersection of two proper supersets.
        let comp = full & !z;
        let mut p = comp;
        while p != 0 {
            let others = comp & !p;
            let mut q = others;
            while q != 0 {
                let (a, b) = (z | p, z | q);
                if a < b {
                    visit!(a, b);
                }
                q = (q - 1) & others;
            }
            p = (p - 1) & comp;
        }
        if state.pass_count & 0x3f == 0 {
            budget.check_time(state.pass_count)?;
        }
    }
    Ok(Outcome::Fixpoint)
}
