//! Named point universes and the bitmask encoding of their subsets.

use std::fmt;

use crate::error::StatementError;

/// Default cap on the number of named points (a table of 2^25 intervals).
pub const DEFAULT_MAX_POINTS: usize = 25;

/// Largest universe the `u32` set encoding can index.
pub const HARD_MAX_POINTS: usize = 30;

/// A subset of a [`PointUniverse`], bit `i` standing for the `i`-th name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        PointSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Index of this set in a powerset table.
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n == 0 {
            PointSet(0)
        } else {
            PointSet(u32::MAX >> (32 - n))
        }
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    #[inline]
    pub const fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: PointSet) -> bool {
        self.0 & other.0 == self.0
    }

    #[inline]
    pub const fn with(self, i: usize) -> PointSet {
        PointSet(self.0 | (1 << i))
    }

    /// Indices of the members, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Image of this set under the index map `i -> perm[i]`.
    pub fn permuted(self, perm: &[usize]) -> PointSet {
        self.iter().fold(PointSet::EMPTY, |acc, i| acc.with(perm[i]))
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(PointSet::EMPTY, PointSet::with)
    }
}

/// The ordered list of point names of a statement together with the
/// ambient projective dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointUniverse {
    names: Vec<String>,
    dimension: u32,
}

impl PointUniverse {
    pub fn new(names: Vec<String>, dimension: u32) -> Result<Self, StatementError> {
        Self::with_max_points(names, dimension, DEFAULT_MAX_POINTS)
    }

    /// Builds a universe, rejecting it when it has more than `max_points` names.
    pub fn with_max_points(
        names: Vec<String>,
        dimension: u32,
        max_points: usize,
    ) -> Result<Self, StatementError> {
        if dimension < 2 {
            return Err(StatementError::DimensionTooSmall(dimension));
        }
        if names.is_empty() {
            return Err(StatementError::EmptyUniverse);
        }
        let max = max_points.min(HARD_MAX_POINTS);
        if names.len() > max {
            return Err(StatementError::TooManyPoints {
                count: names.len(),
                max,
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(StatementError::EmptyName);
            }
            if names[..i].contains(name) {
                return Err(StatementError::DuplicatePoint(name.clone()));
            }
        }
        Ok(PointUniverse { names, dimension })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Largest rank any set can have: `d + 1`.
    pub fn rank_cap(&self) -> u32 {
        self.dimension + 1
    }

    /// Number of subsets, i.e. the size of a rank table.
    pub fn powerset_size(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.names.len())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains_set(&self, set: PointSet) -> bool {
        set.is_subset(self.full_set())
    }

    /// Resolves a list of names to a set.
    pub fn set_of<'a, I>(&self, names: I) -> Result<PointSet, StatementError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().try_fold(PointSet::EMPTY, |acc, name| {
            self.index_of(name)
                .map(|i| acc.with(i))
                .ok_or_else(|| StatementError::UnknownPoint(name.to_string()))
        })
    }

    /// Member names of `set` in universe order.
    pub fn names_of(&self, set: PointSet) -> Vec<&str> {
        set.iter().map(|i| self.names[i].as_str()).collect()
    }

    /// `"A B C"` rendering of a set, `"∅"` for the empty set.
    pub fn display_set(&self, set: PointSet) -> SetDisplay<'_> {
        SetDisplay {
            universe: self,
            set,
        }
    }

    /// Same universe with names reordered so that old index `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> PointUniverse {
        let mut names = vec![String::new(); self.names.len()];
        for (i, name) in self.names.iter().enumerate() {
            names[perm[i]] = name.clone();
        }
        PointUniverse {
            names,
            dimension: self.dimension,
        }
    }
}

pub struct SetDisplay<'a> {
    universe: &'a PointUniverse,
    set: PointSet,
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return f.write_str("∅");
        }
        for (k, i) in self.set.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.universe.names[i])?;
        }
        Ok(())
    }
}
