//! Families of completion members with their strict-inclusion order.

use crate::instance::{IdealInstance, SigmaSet};
use crate::set::AtomSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Members plus the precomputed strict-subset relation. Edge `(a, b)`
/// means member `a` is a proper subset of member `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub members: Vec<SigmaSet>,
    pub strict_subset_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("order cycle through member {0}")]
    Cycle(usize),
    #[error("edge ({0},{1}) disagrees with realized inclusion")]
    BadEdge(usize, usize),
    #[error("members {0} and {1} realize the same set")]
    Duplicate(usize, usize),
    #[error("member {0} is not in the completion of the ideal")]
    NotInCompletion(usize),
}

impl FamilySpec {
    /// Build from members, computing every strict-inclusion edge.
    pub fn new(members: Vec<SigmaSet>) -> Self {
        let mut edges = Vec::new();
        for (a, ma) in members.iter().enumerate() {
            for (b, mb) in members.iter().enumerate() {
                if ma.realized.is_proper_subset(mb.realized) {
                    edges.push((a, b));
                }
            }
        }
        FamilySpec {
            members,
            strict_subset_edges: edges,
        }
    }

    /// Family of plain sets with no generator decomposition attached.
    pub fn from_bare(sets: &[AtomSet]) -> Self {
        FamilySpec::new(sets.iter().map(|&s| SigmaSet::bare(s)).collect())
    }

    /// Family of sets decomposed into generators of `inst`.
    pub fn from_sets(inst: &IdealInstance, sets: &[AtomSet]) -> Result<Self, FamilyError> {
        let members = sets
            .iter()
            .enumerate()
            .map(|(i, &s)| inst.sigma_set(s).ok_or(FamilyError::NotInCompletion(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FamilySpec::new(members))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn set(&self, i: usize) -> AtomSet {
        self.members[i].realized
    }

    pub fn sets(&self) -> Vec<AtomSet> {
        self.members.iter().map(|m| m.realized).collect()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.set(a).is_proper_subset(self.set(b))
    }

    /// Members strictly below `b`, in index order.
    pub fn below(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.less(a, b)).collect()
    }

    /// Members strictly above `a`, in index order.
    pub fn above(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.less(a, b)).collect()
    }

    /// Check that stored edges agree with realized inclusion and that members
    /// are distinct.
    pub fn check(&self) -> Result<(), FamilyError> {
        for (i, m) in self.members.iter().enumerate() {
            if let Some(j) = self.members[..i]
                .iter()
                .position(|x| x.realized == m.realized)
            {
                return Err(FamilyError::Duplicate(j, i));
            }
        }
        let want = FamilySpec::new(self.members.clone()).strict_subset_edges;
        let mut have = self.strict_subset_edges.clone();
        have.sort_unstable();
        for &(a, b) in &have {
            if !want.contains(&(a, b)) {
                return Err(FamilyError::BadEdge(a, b));
            }
        }
        if let Some(&(a, b)) = want.iter().find(|e| have.binary_search(e).is_err()) {
            return Err(FamilyError::BadEdge(a, b));
        }
        Ok(())
    }
}

/// Height of each member in the stored order: 0 for minimal members,
/// otherwise one more than the highest member below.
pub fn rank_family(fam: &FamilySpec) -> Result<Vec<usize>, FamilyError> {
    let n = fam.len();
    let mut preds = vec![Vec::new(); n];
    for &(a, b) in &fam.strict_subset_edges {
        preds[b].push(a);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut rank = vec![0usize; n];
    fn visit(
        v: usize,
        preds: &[Vec<usize>],
        state: &mut [u8],
        rank: &mut [usize],
    ) -> Result<usize, FamilyError> {
        match state[v] {
            2 => return Ok(rank[v]),
            1 => return Err(FamilyError::Cycle(v)),
            _ => {}
        }
        state[v] = 1;
        let mut r = 0;
        for &p in &preds[v] {
            r = r.max(visit(p, preds, state, rank)? + 1);
        }
        state[v] = 2;
        rank[v] = r;
        Ok(r)
    }
    for v in 0..n {
        visit(v, &preds, &mut state, &mut rank)?;
    }
    Ok(rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSmallness {
    pub ok: bool,
    /// Members whose down-set exceeds the bound.
    pub violations: Vec<usize>,
    /// Down-set size (members below or equal) per member.
    pub down_counts: Vec<usize>,
}

/// Every member must have at most `bound` members below or equal to it.
pub fn locally_small_check(fam: &FamilySpec, bound: usize) -> LocalSmallness {
    let sets = fam.sets();
    let down_counts: Vec<usize> = sets
        .iter()
        .map(|&x| sets.iter().filter(|&&y| y.is_subset(x)).count())
        .collect();
    let violations: Vec<usize> = (0..sets.len())
        .filter(|&i| down_counts[i] > bound)
        .collect();
    LocalSmallness {
        ok: violations.is_empty(),
        violations,
        down_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> AtomSet {
        AtomSet::from_indices(v.iter().copied())
    }

    #[test]
    fn chain_ranks() {
        let f = FamilySpec::from_bare(&[s(&[0]), s(&[0, 1]), s(&[0, 1, 2])]);
        assert_eq!(rank_family(&f).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn antichain_ranks() {
        let f = FamilySpec::from_bare(&[s(&[0]), s(&[1])]);
        assert_eq!(rank_family(&f).unwrap(), vec![0, 0]);
    }

    #[test]
    fn diamond_ranks() {
        let f = FamilySpec::from_bare(&[s(&[0]), s(&[0, 1]), s(&[0, 2]), s(&[0, 1, 2])]);
        assert_eq!(rank_family(&f).unwrap(), vec![0, 1, 1, 2]);
    }

    #[test]
    fn fake_edges_make_a_cycle() {
        let mut f = FamilySpec::from_bare(&[s(&[0]), s(&[0])]);
        f.strict_subset_edges = vec![(0, 1), (1, 0)];
        assert!(matches!(rank_family(&f), Err(FamilyError::Cycle(_))));
        assert_eq!(f.check(), Err(FamilyError::Duplicate(0, 1)));
    }

    #[test]
    fn check_catches_missing_edge() {
        let mut f = FamilySpec::from_bare(&[s(&[0]), s(&[0, 1])]);
        assert!(f.check().is_ok());
        f.strict_subset_edges.clear();
        assert_eq!(f.check(), Err(FamilyError::BadEdge(0, 1)));
    }

    #[test]
    fn local_smallness_examples() {
        let chain = FamilySpec::from_bare(&[s(&[0]), s(&[0, 1]), s(&[0, 1, 2])]);
        assert!(locally_small_check(&chain, 3).ok);
        let mut star: Vec<AtomSet> = (0..5).map(|i| s(&[i])).collect();
        star.push(s(&[0, 1, 2, 3, 4]));
        let r = locally_small_check(&FamilySpec::from_bare(&star), 4);
        assert!(!r.ok);
        assert_eq!(r.violations, vec![5]);
    }
}
