//! A second, deliberately naive saturation used to cross-check the engine.
//!
//! It sweeps all ordered pairs and applies the monotonicity and
//! submodularity bounds directly, in whatever order the sweep meets them.
//! The greatest fixpoint does not depend on that order.

use rankprover::{Relation, Statement};

/// Final `(lo, hi)` per subset, or `None` if some interval empties.
pub fn reference_fixpoint(stmt: &Statement) -> Option<Vec<(i32, i32)>> {
    let n = stmt.universe().len();
    let cap = stmt.dimension() as i32 + 1;
    let size = 1usize << n;
    let mut lo = vec![1i32; size];
    let mut hi: Vec<i32> = (0..size).map(|s| (s.count_ones() as i32).min(cap)).collect();
    lo[0] = 0;
    hi[0] = 0;
    for h in stmt.hypotheses() {
        let s = h.set.bits() as usize;
        let v = h.value as i32;
        if matches!(h.relation, Relation::Eq | Relation::Ge) {
            lo[s] = lo[s].max(v);
        }
        if matches!(h.relation, Relation::Eq | Relation::Le) {
            hi[s] = hi[s].min(v);
        }
    }
    loop {
        if (0..size).any(|s| lo[s] > hi[s]) {
            return None;
        }
        let mut changed = false;
        for x in 0..size {
            for y in 0..size {
                if x == y {
                    continue;
                }
                let (u, i) = (x | y, x & y);
                let subset = x & !y == 0;
                let mut tighten = |slot: &mut i32, bound: i32, raise: bool| {
                    if (raise && bound > *slot) || (!raise && bound < *slot) {
                        *slot = bound;
                        changed = true;
                    }
                };
                if subset {
                    let b = lo[x];
                    tighten(&mut lo[y], b, true);
                    let b = hi[y];
                    tighten(&mut hi[x], b, false);
                }
                let b = lo[i] + lo[u] - hi[y];
                tighten(&mut lo[x], b, true);
                let b = hi[x] + hi[y] - lo[i];
                tighten(&mut hi[u], b, false);
                let b = hi[x] + hi[y] - lo[u];
                tighten(&mut hi[i], b, false);
                // Past an empty interval the bounds run off without limit.
                if [x, y, u, i].iter().any(|&s| lo[s] > hi[s]) {
                    return None;
                }
            }
        }
        if !changed {
            return Some((0..size).map(|s| (lo[s], hi[s])).collect());
        }
    }
}
