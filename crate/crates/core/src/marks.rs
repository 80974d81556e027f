//! Subsets of the marking set `[n] = {1, ..., n}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Largest number of markings a space may carry.
pub const MAX_MARKINGS: usize = 63;

/// A set of 1-based marking indices, stored as a bitmask.
///
/// Ordering is lexicographic on the ascending element sequence, so
/// `{1,2} < {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Marks(u64);

impl Marks {
    pub const EMPTY: Marks = Marks(0);

    /// All of `[n]`.
    pub fn full(n: usize) -> Marks {
        debug_assert!(n <= MAX_MARKINGS);
        Marks((1u64 << n) - 1)
    }

    pub fn from_bits(bits: u64) -> Marks {
        Marks(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Marks {
        debug_assert!((1..=MAX_MARKINGS).contains(&i));
        Marks(1 << (i - 1))
    }

    pub fn pair(i: usize, j: usize) -> Marks {
        Marks::singleton(i).union(Marks::singleton(j))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_MARKINGS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(self, i: usize) -> Marks {
        self.union(Marks::singleton(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Marks) -> Marks {
        Marks(self.0 | other.0)
    }

    pub fn intersection(self, other: Marks) -> Marks {
        Marks(self.0 & other.0)
    }

    pub fn difference(self, other: Marks) -> Marks {
        Marks(self.0 & !other.0)
    }

    /// `[n] \ self`.
    pub fn complement(self, n: usize) -> Marks {
        Marks::full(n).difference(self)
    }

    pub fn is_subset(self, other: Marks) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=MAX_MARKINGS).filter(move |&i| bits & (1 << (i - 1)) != 0)
    }

    /// Every subset of `[n]`, in bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = Marks> {
        debug_assert!(n <= MAX_MARKINGS);
        (0..(1u64 << n)).map(Marks)
    }

    /// Builds a set from 1-based indices, checking each against `n`.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Marks, Error> {
        let mut m = Marks::EMPTY;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            m = m.insert(i);
        }
        Ok(m)
    }
}

impl Ord for Marks {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Marks {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for Marks {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(Marks::EMPTY, Marks::insert)
    }
}

impl fmt::Display for Marks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Marks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Order-preserving renumbering of a subset of markings onto `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renumbering {
    /// `old[k - 1]` is the ambient index that became `k`.
    old: Vec<usize>,
}

impl Renumbering {
    pub fn of(subset: Marks) -> Renumbering {
        Renumbering {
            old: subset.iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.old.is_empty()
    }

    /// New index of an ambient marking, if it survives.
    pub fn new_index(&self, ambient: usize) -> Option<usize> {
        self.old.binary_search(&ambient).ok().map(|k| k + 1)
    }

    pub fn old_index(&self, new: usize) -> Option<usize> {
        new.checked_sub(1).and_then(|k| self.old.get(k).copied())
    }

    /// Image of a subset of surviving markings.
    pub fn map_set(&self, ambient: Marks) -> Marks {
        ambient
            .iter()
            .map(|i| self.new_index(i).expect("marking does not survive"))
            .collect()
    }

    /// `(old, new)` pairs in increasing order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.old.iter().enumerate().map(|(k, &o)| (o, k + 1))
    }
}
