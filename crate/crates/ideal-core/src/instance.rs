//! Ideal instances: a ground set, a generator family for J, and a stage bound
//! for the sigma-completion.

use crate::ground::{Atom, GroundSet};
use crate::set::{AtomSet, MAX_ATOMS};
use serde::{Deserialize, Serialize};

/// A free ideal J given by generators, and its stage-bounded completion.
///
/// Membership in J is "subset of one generator". Membership in the
/// completion is "subset of a union of at most `sigma_stage_bound`
/// generators".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealInstance {
    pub ground: GroundSet,
    pub generators: Vec<AtomSet>,
    pub sigma_stage_bound: usize,
    /// Optional family, each member given by its generator stage list.
    pub family: Option<Vec<Vec<usize>>>,
}

/// A member of the completion, remembered with the generators realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaSet {
    pub stages: Vec<usize>,
    pub realized: AtomSet,
}

impl SigmaSet {
    /// A set carried without a generator decomposition.
    pub fn bare(realized: AtomSet) -> Self {
        SigmaSet {
            stages: Vec::new(),
            realized,
        }
    }

    /// Concatenate stage lists; the realized set is the union.
    pub fn join(&self, other: &SigmaSet) -> SigmaSet {
        let mut stages = self.stages.clone();
        for &g in &other.stages {
            if !stages.contains(&g) {
                stages.push(g);
            }
        }
        SigmaSet {
            stages,
            realized: self.realized | other.realized,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    GroundTooLarge {
        size: usize,
        limit: usize,
    },
    DuplicateAtom {
        index: usize,
        atom: Atom,
    },
    UncoveredAtom {
        index: usize,
        atom: Atom,
    },
    GeneratorEqualsGround {
        generator: usize,
    },
    ZeroStageBound,
    StageListTooLong {
        member: usize,
        len: usize,
        bound: usize,
    },
    UnknownGenerator {
        member: usize,
        generator: usize,
    },
    DuplicateMember {
        member: usize,
        first: usize,
    },
}

/// Every violated invariant, each with a witness. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl IdealInstance {
    pub fn new(ground: GroundSet, generators: Vec<AtomSet>, sigma_stage_bound: usize) -> Self {
        IdealInstance {
            ground,
            generators,
            sigma_stage_bound,
            family: None,
        }
    }

    pub fn all(&self) -> AtomSet {
        AtomSet::prefix(self.ground.size().min(MAX_ATOMS))
    }

    /// Index of the first generator containing `set`, if any.
    pub fn in_j(&self, set: AtomSet) -> Option<usize> {
        self.generators.iter().position(|&g| set.is_subset(g))
    }

    /// A canonical cover of `set` by at most `sigma_stage_bound` generators.
    ///
    /// Depth-first: the least uncovered atom picks which generators may be
    /// tried next, in index order, so the first cover found is canonical.
    pub fn in_sigma(&self, set: AtomSet) -> Option<Vec<usize>> {
        fn go(inst: &IdealInstance, left: AtomSet, budget: usize, acc: &mut Vec<usize>) -> bool {
            let Some(a) = left.first() else { return true };
            if budget == 0 {
                return false;
            }
            for (gi, &g) in inst.generators.iter().enumerate() {
                if g.contains(a) {
                    acc.push(gi);
                    if go(inst, left.minus(g), budget - 1, acc) {
                        return true;
                    }
                    acc.pop();
                }
            }
            false
        }
        let mut acc = Vec::new();
        go(self, set, self.sigma_stage_bound, &mut acc).then_some(acc)
    }

    pub fn sigma_set(&self, set: AtomSet) -> Option<SigmaSet> {
        self.in_sigma(set).map(|stages| SigmaSet {
            stages,
            realized: set,
        })
    }

    /// Realize a stage list as a completion member.
    pub fn realize(&self, stages: &[usize]) -> Option<SigmaSet> {
        let mut realized = AtomSet::EMPTY;
        for &g in stages {
            realized |= *self.generators.get(g)?;
        }
        Some(SigmaSet {
            stages: stages.to_vec(),
            realized,
        })
    }

    pub fn family_sets(&self) -> Option<Vec<SigmaSet>> {
        let fam = self.family.as_ref()?;
        fam.iter().map(|st| self.realize(st)).collect()
    }
}

/// Check every instance invariant and report each failure with a witness.
pub fn validate_instance(inst: &IdealInstance) -> ValidationReport {
    let mut v = Vec::new();
    let n = inst.ground.size();
    if n > MAX_ATOMS {
        v.push(Violation::GroundTooLarge {
            size: n,
            limit: MAX_ATOMS,
        });
    }
    for (i, a) in inst.ground.elements.iter().enumerate() {
        if inst.ground.elements[..i].contains(a) {
            v.push(Violation::DuplicateAtom {
                index: i,
                atom: a.clone(),
            });
        }
    }
    let covered = inst
        .generators
        .iter()
        .fold(AtomSet::EMPTY, |acc, &g| acc | g);
    for i in 0..n.min(MAX_ATOMS) {
        if !covered.contains(i) {
            v.push(Violation::UncoveredAtom {
                index: i,
                atom: inst.ground.atom(i).clone(),
            });
        }
    }
    let all = inst.all();
    for (gi, &g) in inst.generators.iter().enumerate() {
        if g == all {
            v.push(Violation::GeneratorEqualsGround { generator: gi });
        }
    }
    if inst.sigma_stage_bound == 0 {
        v.push(Violation::ZeroStageBound);
    }
    if let Some(fam) = &inst.family {
        let mut seen: Vec<AtomSet> = Vec::new();
        for (mi, st) in fam.iter().enumerate() {
            if st.len() > inst.sigma_stage_bound {
                v.push(Violation::StageListTooLong {
                    member: mi,
                    len: st.len(),
                    bound: inst.sigma_stage_bound,
                });
            }
            if let Some(&bad) = st.iter().find(|&&g| g >= inst.generators.len()) {
                v.push(Violation::UnknownGenerator {
                    member: mi,
                    generator: bad,
                });
                seen.push(AtomSet::EMPTY);
                continue;
            }
            let r = inst.realize(st).expect("indices checked").realized;
            if let Some(first) = seen.iter().position(|&s| s == r) {
                v.push(Violation::DuplicateMember { member: mi, first });
            }
            seen.push(r);
        }
    }
    ValidationReport { violations: v }
}
