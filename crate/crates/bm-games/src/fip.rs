//! Decomposition of a finite space's nonempty opens into pairwise-meeting
//! families, and the 1-tactic it induces.

use crate::error::BmError;
use crate::play::BmTactic;
use crate::space::FiniteSpace;
use ideal_core::AtomSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FipDecomposition {
    /// Largest number of pairwise disjoint nonempty opens.
    pub n: usize,
    /// One disjoint family of that size, in canonical order.
    pub seeds: Vec<AtomSet>,
    /// `families[i]` is a maximal pairwise-meeting family containing `seeds[i]`.
    pub families: Vec<Vec<AtomSet>>,
}

impl FipDecomposition {
    /// Every way the decomposition fails its contract; empty when sound.
    pub fn problems(&self, space: &FiniteSpace) -> Vec<String> {
        let mut out = Vec::new();
        if self.seeds.len() != self.n || self.families.len() != self.n {
            out.push(format!(
                "{} seeds and {} families for n = {}",
                self.seeds.len(),
                self.families.len(),
                self.n
            ));
        }
        for (i, fam) in self.families.iter().enumerate() {
            for (a, u) in fam.iter().enumerate() {
                if let Some(v) = fam[a + 1..].iter().find(|v| u.is_disjoint(**v)) {
                    out.push(format!("family {} holds disjoint {u} and {v}", i + 1));
                }
            }
            if fam
                .iter()
                .fold(space_whole(space), |acc, &u| acc & u)
                .is_empty()
            {
                out.push(format!("family {} has empty intersection", i + 1));
            }
            if let Some(v) = space
                .opens
                .iter()
                .find(|v| !fam.contains(v) && fam.iter().all(|u| !u.is_disjoint(**v)))
            {
                out.push(format!("family {} could still take {v}", i + 1));
            }
        }
        for u in &space.opens {
            if !self.families.iter().any(|f| f.contains(u)) {
                out.push(format!("{u} is in no family"));
            }
        }
        if max_disjoint(&space.opens).len() != self.n {
            out.push("n is not the largest disjoint family size".into());
        }
        out
    }
}

fn space_whole(space: &FiniteSpace) -> AtomSet {
    AtomSet::prefix(space.points)
}

/// First largest pairwise disjoint subfamily, by exhaustive search in
/// canonical order.
fn max_disjoint(opens: &[AtomSet]) -> Vec<AtomSet> {
    fn go(
        opens: &[AtomSet],
        from: usize,
        used: AtomSet,
        cur: &mut Vec<AtomSet>,
        best: &mut Vec<AtomSet>,
    ) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        // each further member needs at least one fresh point
        let room = (opens.len() - from).min(128 - used.len());
        if cur.len() + room <= best.len() {
            return;
        }
        for i in from..opens.len() {
            if opens[i].is_disjoint(used) {
                cur.push(opens[i]);
                go(opens, i + 1, used | opens[i], cur, best);
                cur.pop();
            }
        }
    }
    let mut best = Vec::new();
    go(opens, 0, AtomSet::EMPTY, &mut Vec::new(), &mut best);
    best
}

pub fn fip_decompose(space: &FiniteSpace) -> FipDecomposition {
    let seeds = max_disjoint(&space.opens);
    let families = seeds
        .iter()
        .map(|&seed| {
            let mut fam = vec![seed];
            for &v in &space.opens {
                if v != seed && fam.iter().all(|u| !u.is_disjoint(v)) {
                    fam.push(v);
                }
            }
            fam
        })
        .collect();
    FipDecomposition {
        n: seeds.len(),
        seeds,
        families,
    }
}

/// Answers `seed_j ∩ U` for the first seed meeting `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FipTactic {
    seeds: Vec<AtomSet>,
}

pub fn fip_one_tactic(space: &FiniteSpace, dec: &FipDecomposition) -> Result<FipTactic, BmError> {
    if dec.seeds.iter().any(|u| !space.opens.contains(u)) {
        return Err(BmError::Contract("seed is not an open of the space".into()));
    }
    Ok(FipTactic {
        seeds: dec.seeds.clone(),
    })
}

impl BmTactic<AtomSet> for FipTactic {
    fn window(&self) -> usize {
        1
    }
    fn respond(&self, window: &[AtomSet], _: usize) -> Result<AtomSet, BmError> {
        let u = *window
            .last()
            .ok_or_else(|| BmError::Contract("empty window".into()))?;
        self.seeds
            .iter()
            .map(|&s| s & u)
            .find(|m| !m.is_empty())
            .ok_or_else(|| BmError::Contract(format!("no seed meets {u}")))
    }
    fn label(&self) -> String {
        "fip-1".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ix: &[usize]) -> AtomSet {
        AtomSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn two_point_discrete() {
        let sp = FiniteSpace::discrete(2);
        let d = fip_decompose(&sp);
        assert_eq!(d.n, 2);
        assert_eq!(d.seeds, vec![s(&[0]), s(&[1])]);
        assert!(d.families[0].contains(&s(&[0])) && d.families[0].contains(&s(&[0, 1])));
        assert!(d.families[1].contains(&s(&[1])) && d.families[1].contains(&s(&[0, 1])));
        assert!(d.problems(&sp).is_empty());
        let t = fip_one_tactic(&sp, &d).unwrap();
        assert_eq!(t.respond(&[s(&[0, 1])], 0).unwrap(), s(&[0]));
        assert_eq!(t.respond(&[s(&[1])], 0).unwrap(), s(&[1]));
    }

    #[test]
    fn indiscrete() {
        let sp = FiniteSpace::indiscrete(3);
        let d = fip_decompose(&sp);
        assert_eq!((d.n, d.families.clone()), (1, vec![vec![s(&[0, 1, 2])]]));
    }

    #[test]
    fn problems_are_reported() {
        let sp = FiniteSpace::discrete(2);
        let mut d = fip_decompose(&sp);
        d.families[0].push(s(&[1]));
        d.families[1].retain(|&u| u != s(&[0, 1]));
        let p = d.problems(&sp);
        assert!(p.iter().any(|m| m.contains("disjoint")));
        assert_eq!(fip_decompose(&FiniteSpace::discrete(4)).n, 4);
    }
}
