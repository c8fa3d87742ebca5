//! Spaces the game is played on, and the finite ones.

use crate::error::BmError;
use crate::play::OneMenu;
use ideal_core::AtomSet;
use serde::{Deserialize, Serialize};
use std::fmt::Debug;

/// Open sets of a space, with the operations the game rules need.
pub trait BmSpace: Sync {
    type Open: Clone + Eq + Debug + Send + Sync + Serialize;

    fn whole(&self) -> Self::Open;
    fn is_open(&self, u: &Self::Open) -> bool;
    fn meet(&self, a: &Self::Open, b: &Self::Open) -> Self::Open;
    fn is_empty(&self, u: &Self::Open) -> bool;
    fn subset(&self, a: &Self::Open, b: &Self::Open) -> bool;

    /// Longest play the space can carry, if truncated.
    fn max_depth(&self) -> Option<usize> {
        None
    }
}

/// Points `0..points` with a family of opens closed under union and under
/// nonempty intersection. The empty set is implicitly open and never played.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSpace {
    pub points: usize,
    pub opens: Vec<AtomSet>,
}

fn canonical_key(u: &AtomSet) -> (usize, u128) {
    (u.len(), u.0)
}

impl FiniteSpace {
    /// Sorts and dedups the opens, drops the empty set, and validates.
    pub fn new(points: usize, opens: Vec<AtomSet>) -> Result<Self, BmError> {
        let mut opens: Vec<AtomSet> = opens.into_iter().filter(|u| !u.is_empty()).collect();
        opens.sort_by_key(canonical_key);
        opens.dedup();
        let s = FiniteSpace { points, opens };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), BmError> {
        if self.points == 0 || self.points > ideal_core::MAX_ATOMS {
            return Err(BmError::NotASpace(format!("{} points", self.points)));
        }
        let whole = AtomSet::prefix(self.points);
        if !self.opens.contains(&whole) {
            return Err(BmError::NotASpace("the whole set is not open".into()));
        }
        if let Some(u) = self.opens.iter().find(|u| !u.is_subset(whole)) {
            return Err(BmError::NotASpace(format!("{u} leaves the point set")));
        }
        for a in &self.opens {
            for b in &self.opens {
                if !self.opens.contains(&(*a | *b)) {
                    return Err(BmError::NotASpace(format!("{a} | {b} is not open")));
                }
                let m = *a & *b;
                if !m.is_empty() && !self.opens.contains(&m) {
                    return Err(BmError::NotASpace(format!("{a} & {b} is not open")));
                }
            }
        }
        Ok(())
    }

    pub fn discrete(points: usize) -> Self {
        let opens = (1u128..1 << points).map(AtomSet).collect();
        FiniteSpace::new(points, opens).expect("the power set is a space")
    }

    pub fn indiscrete(points: usize) -> Self {
        FiniteSpace::new(points, vec![AtomSet::prefix(points)]).expect("indiscrete space")
    }
}

impl BmSpace for FiniteSpace {
    type Open = AtomSet;

    fn whole(&self) -> AtomSet {
        AtomSet::prefix(self.points)
    }
    fn is_open(&self, u: &AtomSet) -> bool {
        self.opens
            .binary_search_by_key(&canonical_key(u), canonical_key)
            .is_ok()
    }
    fn meet(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        *a & *b
    }
    fn is_empty(&self, u: &AtomSet) -> bool {
        u.is_empty()
    }
    fn subset(&self, a: &AtomSet, b: &AtomSet) -> bool {
        a.is_subset(*b)
    }
}

/// ONE may play any nonempty open inside TWO's last move.
#[derive(Clone, Copy, Debug, Default)]
pub struct FullMenu;

impl OneMenu<FiniteSpace> for FullMenu {
    fn moves(&self, space: &FiniteSpace, within: &AtomSet) -> Vec<AtomSet> {
        space
            .opens
            .iter()
            .copied()
            .filter(|u| u.is_subset(*within))
            .collect()
    }
}

/// Every family of subsets of `0..points` containing the whole set and
/// closed under union and nonempty intersection, in mask order.
pub fn all_finite_spaces(points: usize) -> Vec<FiniteSpace> {
    assert!(points <= 4, "enumeration is doubly exponential");
    let whole = (1u128 << points) - 1;
    let proper: Vec<u128> = (1..whole).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << proper.len() {
        let mut opens: Vec<AtomSet> = vec![AtomSet(whole)];
        opens.extend(
            proper
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &u)| AtomSet(u)),
        );
        if let Ok(s) = FiniteSpace::new(points, opens) {
            out.push(s);
        }
    }
    out
}
