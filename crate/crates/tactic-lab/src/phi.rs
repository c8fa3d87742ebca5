//! The pair of maps that turn a monotone-game tactic into a strong one.
//!
//! Every atom `α` carries a member `A_α ∋ α`. `Φ₂(X)` is the canonical
//! member that strictly contains `X` and is closed under `α ↦ A_α`; `Φ₁(X)`
//! names an atom outside `Φ₂(X)` whose member lies strictly above it.

use crate::error::LabError;
use crate::family::Members;
use game_engine::TacticError;
use ideal_core::{AtomSet, FamilySpec, MAX_ATOMS};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct PhiMaps {
    members: Arc<Members>,
    /// `A_α` as a member index, per atom.
    enumeration: Vec<Option<usize>>,
}

impl PhiMaps {
    pub fn members(&self) -> &Members {
        &self.members
    }

    pub fn enumerated(&self, atom: usize) -> Option<usize> {
        self.enumeration.get(atom).copied().flatten()
    }

    /// Least set containing `x` and closed under the enumeration.
    pub fn closure(&self, x: AtomSet) -> Result<AtomSet, TacticError> {
        let mut cur = x;
        loop {
            let mut next = cur;
            for a in cur.iter() {
                let m = self
                    .enumerated(a)
                    .ok_or_else(|| TacticError::Ceiling(format!("atom {a} lies in no member")))?;
                next |= self.members.sets[m];
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn phi2(&self, x: AtomSet) -> Result<AtomSet, TacticError> {
        let hull = self.closure(x)?;
        let m = &self.members;
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.sort_by_key(|&i| (m.sets[i].len(), i));
        order
            .into_iter()
            .map(|i| m.sets[i])
            .find(|&s| hull.is_subset(s) && x.is_proper_subset(s))
            .ok_or_else(|| {
                TacticError::Ceiling(format!("no member strictly above {:?}", x.to_vec()))
            })
    }

    /// Least atom outside `Φ₂(x)` whose member strictly contains `Φ₂(x)`.
    pub fn rho(&self, x: AtomSet) -> Result<usize, TacticError> {
        let top = self.phi2(x)?;
        (0..self.enumeration.len())
            .find(|&a| {
                !top.contains(a)
                    && self
                        .enumerated(a)
                        .is_some_and(|m| top.is_proper_subset(self.members.sets[m]))
            })
            .ok_or_else(|| TacticError::Ceiling(format!("nothing escapes {:?}", top.to_vec())))
    }

    pub fn phi1(&self, x: AtomSet) -> Result<AtomSet, TacticError> {
        self.rho(x).map(AtomSet::singleton)
    }

    /// Check both invariants on every pair drawn from `sets`.
    pub fn validate(&self, sets: &[AtomSet]) -> Result<(), LabError> {
        check_invariants(sets, |x| self.phi1(x).ok(), |x| self.phi2(x).ok())
    }
}

/// Invariants for arbitrary maps: (a) `A ⊂ Φ₂(A)`; (b) whenever
/// `A ∪ Φ₁(A) ⊆ B`, also `Φ₂(A) ⊂ Φ₂(B)`. Sets where a map is undefined
/// are skipped.
pub fn check_invariants(
    sets: &[AtomSet],
    phi1: impl Fn(AtomSet) -> Option<AtomSet>,
    phi2: impl Fn(AtomSet) -> Option<AtomSet>,
) -> Result<(), LabError> {
    for &a in sets {
        let Some(a2) = phi2(a) else { continue };
        if !a.is_proper_subset(a2) {
            return Err(LabError::PhiInvariant {
                which: 'a',
                witness: vec![a, a2],
            });
        }
        let Some(a1) = phi1(a) else { continue };
        for &b in sets {
            if !(a | a1).is_subset(b) {
                continue;
            }
            if let Some(b2) = phi2(b) {
                if !a2.is_proper_subset(b2) {
                    return Err(LabError::PhiInvariant {
                        which: 'b',
                        witness: vec![a, b],
                    });
                }
            }
        }
    }
    Ok(())
}

/// Canonical enumeration: each atom goes to the smallest member holding it,
/// ties broken by index.
pub fn build_phi_maps(fam: &FamilySpec) -> PhiMaps {
    let members = Members::new(fam);
    let enumeration = (0..MAX_ATOMS)
        .map(|a| members.least_containing(AtomSet::singleton(a)))
        .collect();
    PhiMaps {
        members: Arc::new(members),
        enumeration,
    }
}

/// Maps with a caller-chosen enumeration, given as `(atom, member)` pairs.
pub fn build_phi_maps_with(
    fam: &FamilySpec,
    pairs: &[(usize, usize)],
) -> Result<PhiMaps, LabError> {
    let members = Members::new(fam);
    let mut enumeration = vec![None; MAX_ATOMS];
    for &(a, m) in pairs {
        if a >= MAX_ATOMS || m >= members.len() || !members.sets[m].contains(a) {
            return Err(LabError::Inputs(format!("atom {a} is not in member {m}")));
        }
        enumeration[a] = Some(m);
    }
    let covered = members.sets.iter().fold(AtomSet::EMPTY, |acc, &s| acc | s);
    if let Some(a) = covered.iter().find(|&a| enumeration[a].is_none()) {
        return Err(LabError::NoEnumeration(a));
    }
    Ok(PhiMaps {
        members: Arc::new(members),
        enumeration,
    })
}
