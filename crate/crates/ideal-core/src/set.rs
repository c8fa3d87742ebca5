//! Bitset over canonical atom indices.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Maximum number of atoms a ground set may hold.
pub const MAX_ATOMS: usize = 128;

/// A subset of a ground set, stored as a bitmask over atom indices.
///
/// Index order is the ground set's canonical order, so iteration and every
/// "first element" choice follow it.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet(pub u128);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_ATOMS, "atom index {i} out of range");
        AtomSet(1u128 << i)
    }

    /// The set {0, 1, ..., n-1}.
    pub fn prefix(n: usize) -> Self {
        assert!(n <= MAX_ATOMS);
        if n == MAX_ATOMS {
            AtomSet(u128::MAX)
        } else {
            AtomSet((1u128 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(AtomSet::EMPTY, |s, i| s.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        self | AtomSet::singleton(i)
    }

    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ATOMS && self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        AtomSet(self.0 | other.0)
    }

    pub fn inter(self, other: Self) -> Self {
        AtomSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Least index in the set.
    pub fn first(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

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

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::ops::BitOr for AtomSet {
    type Output = AtomSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitOrAssign for AtomSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for AtomSet {
    type Output = AtomSet;
    fn bitand(self, rhs: Self) -> Self {
        self.inter(rhs)
    }
}

impl std::iter::FromIterator<usize> for AtomSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        AtomSet::from_indices(iter)
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for AtomSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for AtomSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&i| i >= MAX_ATOMS) {
            return Err(serde::de::Error::custom(format!(
                "atom index {bad} exceeds the {MAX_ATOMS}-atom limit"
            )));
        }
        Ok(AtomSet::from_indices(v))
    }
}
