//! Exhaustive enumeration of rank functions on a small universe.
//!
//! A rank function here is any `r` with `r(∅) = 0`, rank one on points,
//! unit increase along single-point extensions, submodularity, and
//! `r <= cap`. Sets are filled
//! in increasing mask order, so every proper subset of a set is fixed
//! before the set itself.

use rankprover::Statement;

/// Calls `visit` with every rank function satisfying the hypotheses.
pub fn for_each_model(stmt: &Statement, mut visit: impl FnMut(&[i32])) {
    let n = stmt.universe().len();
    let cap = stmt.dimension() as i32 + 1;
    let mut r = vec![0i32; 1 << n];
    let demands: Vec<Vec<(i32, i32)>> = (0..1usize << n)
        .map(|s| {
            stmt.hypotheses()
                .iter()
                .filter(|h| h.set.bits() as usize == s)
                .map(|h| {
                    let v = h.value as i32;
                    match h.relation {
                        rankprover::Relation::Eq => (v, v),
                        rankprover::Relation::Le => (0, v),
                        rankprover::Relation::Ge => (v, i32::MAX),
                    }
                })
                .collect()
        })
        .collect();
    fill(1, n, cap, &demands, &mut r, &mut visit);
}

fn fill(
    z: usize,
    n: usize,
    cap: i32,
    demands: &[Vec<(i32, i32)>],
    r: &mut Vec<i32>,
    visit: &mut impl FnMut(&[i32]),
) {
    if z == 1 << n {
        visit(r);
        return;
    }
    // Unit increase: r(z) is r(z - p) or r(z - p) + 1 for every p in z.
    let mut lo = 1;
    let mut hi = cap;
    let mut bits = z;
    while bits != 0 {
        let p = bits & bits.wrapping_neg();
        bits &= bits - 1;
        lo = lo.max(r[z ^ p]);
        hi = hi.min(r[z ^ p] + 1);
    }
    for &(a, b) in &demands[z] {
        lo = lo.max(a);
        hi = hi.min(b);
    }
    'value: for v in lo..=hi {
        r[z] = v;
        // Submodularity for every pair of proper subsets whose union is z.
        let mut x = (z - 1) & z;
        while x != 0 {
            let mut y = (z - 1) & z;
            while y != 0 {
                if x | y == z && r[x] + r[y] < v + r[x & y] {
                    continue 'value;
                }
                y = (y - 1) & z;
            }
            x = (x - 1) & z;
        }
        fill(z + 1, n, cap, demands, r, visit);
    }
}
