use std::fmt;

/// Bounds `lo <= rk(X) <= hi` on the unknown rank of a point set.
///
/// `lo > hi` is a contradiction. Bounds are signed so that rule arithmetic
/// that overshoots below zero is still representable as a contradiction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(C)]
pub struct RankInterval {
    pub lo: i8,
    pub hi: i8,
}

impl RankInterval {
    #[inline]
    pub const fn new(lo: i8, hi: i8) -> Self {
        RankInterval { lo, hi }
    }

    #[inline]
    pub const fn exact(value: i8) -> Self {
        RankInterval {
            lo: value,
            hi: value,
        }
    }

    /// `lo > hi`.
    #[inline]
    pub const fn is_contradictory(self) -> bool {
        self.lo > self.hi
    }

    /// `lo == hi`.
    #[inline]
    pub const fn is_determined(self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub const fn contains(self, rank: i32) -> bool {
        self.lo as i32 <= rank && rank <= self.hi as i32
    }

    /// True if `self` is contained in `other` (both bounds at least as tight).
    #[inline]
    pub const fn is_within(self, other: RankInterval) -> bool {
        self.lo >= other.lo && self.hi <= other.hi
    }

    /// Pointwise tightest combination.
    #[inline]
    pub fn meet(self, other: RankInterval) -> RankInterval {
        RankInterval {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }
}

impl fmt::Display for RankInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.lo, self.hi)
    }
}
