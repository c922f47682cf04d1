//! Assigning statement points to model points: checking and searching.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::model::ProjectiveModel;
use crate::statement::{RankConstraint, Relation, Statement};
use crate::universe::PointSet;

/// Universe point `i` is placed at model point `self.0[i]`. Several names
/// may share a model point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<usize>);

impl Assignment {
    pub fn rank<F: Field>(&self, model: &ProjectiveModel<F>, set: PointSet) -> u32 {
        model.rank_of_set(&self.0, set)
    }

    pub fn holds<F: Field>(&self, model: &ProjectiveModel<F>, c: &RankConstraint) -> bool {
        c.relation.holds(self.rank(model, c.set), c.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignmentCheck {
    Satisfies,
    /// Index of the first hypothesis that fails.
    Violates(usize),
}

/// Evaluates every hypothesis of `stmt` under `asg`.
pub fn check_assignment<F: Field>(
    model: &ProjectiveModel<F>,
    stmt: &Statement,
    asg: &Assignment,
) -> AssignmentCheck {
    assert_eq!(asg.0.len(), stmt.universe().len(), "assignment is not total");
    match stmt.hypotheses().iter().position(|h| !asg.holds(model, h)) {
        Some(i) => AssignmentCheck::Violates(i),
        None => AssignmentCheck::Satisfies,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The assignment satisfies every hypothesis and violates the
    /// conclusion with the given index.
    Found {
        assignment: Assignment,
        conclusion: usize,
        trials: u64,
    },
    /// No countermodel was met. `exhaustive` means the whole space of
    /// assignments was covered, not just sampled.
    NotFound { trials: u64, exhaustive: bool },
}

/// Universes up to this size are searched exhaustively.
pub const EXHAUSTIVE_POINTS: usize = 5;

/// Looks for an assignment that satisfies the hypotheses and breaks a
/// conclusion, trying at most `budget` point placements.
///
/// Small universes are enumerated in full; larger ones get randomized
/// depth-first searches with restarts, seeded by `seed`.
pub fn search_countermodel<F: Field>(
    stmt: &Statement,
    model: &ProjectiveModel<F>,
    budget: u64,
    seed: u64,
) -> SearchOutcome {
    let mut search = Search::new(stmt, model, Mode::Countermodel, seed);
    if stmt.universe().len() <= EXHAUSTIVE_POINTS {
        let done = search.run(budget, false);
        return match search.found.pop() {
            Some((assignment, conclusion)) => SearchOutcome::Found {
                assignment,
                conclusion,
                trials: search.trials,
            },
            None => SearchOutcome::NotFound {
                trials: search.trials,
                exhaustive: done,
            },
        };
    }
    // Each restart stops at its first satisfying assignment, so the early,
    // most constrained placements get resampled often. The limit only grows
    // while restarts fail to reach any satisfying assignment.
    search.stop_at_leaf = true;
    let mut restart_limit = 1_000u64;
    while search.trials < budget {
        let limit = restart_limit.min(budget - search.trials);
        let leaves = search.leaves;
        let done = search.run(limit, true);
        if let Some((assignment, conclusion)) = search.found.pop() {
            return SearchOutcome::Found {
                assignment,
                conclusion,
                trials: search.trials,
            };
        }
        if done {
            return SearchOutcome::NotFound {
                trials: search.trials,
                exhaustive: true,
            };
        }
        if search.leaves == leaves {
            restart_limit = restart_limit.saturating_mul(2);
        }
    }
    SearchOutcome::NotFound {
        trials: search.trials,
        exhaustive: false,
    }
}

/// Draws up to `count` assignments satisfying every hypothesis, one per
/// randomized restart, spending at most `budget` placements.
pub fn sample_satisfying<F: Field>(
    stmt: &Statement,
    model: &ProjectiveModel<F>,
    count: usize,
    budget: u64,
    seed: u64,
) -> Vec<Assignment> {
    let mut search = Search::new(stmt, model, Mode::Sample, seed);
    let mut out = Vec::with_capacity(count);
    // Restart limits follow the Luby sequence, so a run of unlucky early
    // placements never commits the search to one huge dead subtree.
    let mut restart = 0;
    while out.len() < count && search.trials < budget {
        restart += 1;
        let limit = (SAMPLE_RESTART_UNIT * luby(restart)).min(budget - search.trials);
        let done = search.run(limit, true);
        match search.found.pop() {
            Some((a, _)) => out.push(a),
            // The search space was exhausted without a single solution.
            None if done => break,
            None => {}
        }
    }
    out
}

const SAMPLE_RESTART_UNIT: u64 = 30;

/// The `i`-th term (from 1) of the Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(i: u64) -> u64 {
    let mut i = i;
    loop {
        let k = 64 - i.leading_zeros();
        if i == (1 << k) - 1 {
            return 1 << (k - 1);
        }
        i -= (1 << (k - 1)) - 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Countermodel,
    Sample,
}

/// Rank upper bounds implied by the hypotheses through matroid closure.
///
/// If `rk(S) >= v` and `rk(T) <= v` for some `T ⊇ S`, every point of `T`
/// lies in the closure of `S`, and so does the closure of any set inside
/// it. Each closure found this way keeps rank `v`. Hypotheses alone only
/// pin such a closure once its last point is placed, so stating it outright
/// prunes the search much earlier. The bounds hold in every model of the
/// hypotheses, so the satisfying assignments stay the same.
fn closure_bounds(hyps: &[RankConstraint]) -> Vec<RankConstraint> {
    let lower = |r: Relation| matches!(r, Relation::Eq | Relation::Ge);
    let upper = |r: Relation| matches!(r, Relation::Eq | Relation::Le);
    let mut closures: Vec<(PointSet, u32, PointSet)> = hyps
        .iter()
        .filter(|b| lower(b.relation))
        .map(|b| {
            let closure = hyps
                .iter()
                .filter(|t| upper(t.relation) && t.value <= b.value && b.set.is_subset(t.set))
                .fold(b.set, |acc, t| acc.union(t.set));
            (b.set, b.value, closure)
        })
        .collect();
    let mut grew = true;
    while grew {
        grew = false;
        for i in 0..closures.len() {
            for j in 0..closures.len() {
                let (base, _, inner) = closures[j];
                let (_, _, outer) = closures[i];
                if i != j && base.is_subset(outer) && !inner.is_subset(outer) {
                    closures[i].2 = outer.union(inner);
                    grew = true;
                }
            }
        }
    }
    let mut out: Vec<RankConstraint> = Vec::new();
    for (base, value, closure) in closures {
        let known = hyps
            .iter()
            .chain(&out)
            .any(|h| h.set == closure && upper(h.relation) && h.value <= value);
        if closure != base && !known {
            out.push(RankConstraint::new(closure, Relation::Le, value));
        }
    }
    out
}

/// Placement order of universe points and, per position, the constraints
/// to test once the point at that position is placed.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<usize>>,
}

impl Plan {
    /// Greedy fail-first order: next is the point that completes the most
    /// constraints, then the one touching the most partially placed ones.
    fn new(n: usize, hyps: &[RankConstraint]) -> Plan {
        let mut placed = PointSet::EMPTY;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let best = (0..n)
                .filter(|&p| !placed.contains(p))
                .max_by_key(|&p| {
                    let after = placed.with(p);
                    let completes = hyps
                        .iter()
                        .filter(|h| h.set.contains(p) && h.set.is_subset(after))
                        .count();
                    let touches = hyps
                        .iter()
                        .filter(|h| h.set.contains(p) && !h.set.intersection(placed).is_empty())
                        .count();
                    let total = hyps.iter().filter(|h| h.set.contains(p)).count();
                    (completes, touches, total, std::cmp::Reverse(p))
                })
                .expect("an unplaced point remains");
            placed = placed.with(best);
            order.push(best);
        }
        let checks = order
            .iter()
            .map(|&p| {
                (0..hyps.len())
                    .filter(|&h| hyps[h].set.contains(p))
                    .collect()
            })
            .collect();
        Plan { order, checks }
    }
}

struct Search<'a, F: Field> {
    stmt: &'a Statement,
    /// The hypotheses followed by the bounds they imply.
    constraints: Vec<RankConstraint>,
    model: &'a ProjectiveModel<F>,
    mode: Mode,
    plan: Plan,
    rng: ChaCha8Rng,
    assignment: Vec<usize>,
    placed: PointSet,
    trials: u64,
    found: Vec<(Assignment, usize)>,
    candidates: Vec<Vec<usize>>,
    /// Satisfying assignments reached so far.
    leaves: u64,
    stop_at_leaf: bool,
}

enum Flow {
    Continue,
    Stop,
}

impl<'a, F: Field> Search<'a, F> {
    fn new(stmt: &'a Statement, model: &'a ProjectiveModel<F>, mode: Mode, seed: u64) -> Self {
        let n = stmt.universe().len();
        let mut constraints = stmt.hypotheses().to_vec();
        constraints.extend(closure_bounds(stmt.hypotheses()));
        Search {
            stmt,
            model,
            mode,
            plan: Plan::new(n, &constraints),
            constraints,
            rng: ChaCha8Rng::seed_from_u64(seed),
            assignment: vec![0; n],
            placed: PointSet::EMPTY,
            trials: 0,
            found: Vec::new(),
            candidates: vec![(0..model.len()).collect(); n],
            leaves: 0,
            stop_at_leaf: false,
        }
    }

    /// One depth-first search with at most `limit` more placements.
    /// Returns true if the search space was exhausted.
    fn run(&mut self, limit: u64, randomize: bool) -> bool {
        self.placed = PointSet::EMPTY;
        let stop_at = self.trials + limit;
        matches!(self.dfs(0, stop_at, randomize), Flow::Continue)
    }

    fn feasible(&self, depth: usize) -> bool {
        let cap = self.model.columns() as u32;
        self.plan.checks[depth].iter().all(|&h| {
            let c = &self.constraints[h];
            let known = c.set.intersection(self.placed);
            let missing = c.set.difference(self.placed).len() as u32;
            let r = self.model.rank_of_set(&self.assignment, known);
            let most = (r + missing).min(cap);
            match c.relation {
                Relation::Eq => r <= c.value && most >= c.value,
                Relation::Le => r <= c.value,
                Relation::Ge => most >= c.value,
            }
        })
    }

    fn dfs(&mut self, depth: usize, stop_at: u64, randomize: bool) -> Flow {
        if depth == self.plan.order.len() {
            return self.leaf();
        }
        let point = self.plan.order[depth];
        let mut cands = std::mem::take(&mut self.candidates[depth]);
        if randomize {
            cands.shuffle(&mut self.rng);
        }
        let mut flow = Flow::Continue;
        for &m in &cands {
            if self.trials >= stop_at {
                flow = Flow::Stop;
                break;
            }
            self.trials += 1;
            self.assignment[point] = m;
            self.placed = self.placed.with(point);
            if self.feasible(depth) {
                if let Flow::Stop = self.dfs(depth + 1, stop_at, randomize) {
                    flow = Flow::Stop;
                }
            }
            self.placed = self.placed.difference(PointSet::singleton(point));
            if let Flow::Stop = flow {
                break;
            }
        }
        self.candidates[depth] = cands;
        flow
    }

    fn leaf(&mut self) -> Flow {
        self.leaves += 1;
        let asg = Assignment(self.assignment.clone());
        match self.mode {
            Mode::Sample => {
                self.found.push((asg, 0));
                Flow::Stop
            }
            Mode::Countermodel => {
                let broken = self
                    .stmt
                    .conclusions()
                    .iter()
                    .position(|c| !asg.holds(self.model, c));
                match broken {
                    Some(i) => {
                        self.found.push((asg, i));
                        Flow::Stop
                    }
                    None if self.stop_at_leaf => Flow::Stop,
                    None => Flow::Continue,
                }
            }
        }
    }
}
