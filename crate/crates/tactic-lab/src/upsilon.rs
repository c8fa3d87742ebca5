//! The k-tactic for the monotone game read off a decomposition and a
//! path-free coloring of k-windows.

use crate::error::LabError;
use crate::family::Members;
use coherent_decomp::Decomposition;
use game_engine::{Tactic, TacticError, TwoMove};
use ideal_core::{AtomSet, FamilySpec};
use path_partition::{find_bounded_path, increasing_tuples, Coloring, Palette};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Path-freeness requirement checked before a tactic is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCheck {
    pub length: usize,
    pub palette: Palette,
    pub budget: u64,
}

impl PathCheck {
    pub fn new(length: usize, palette: Palette) -> Self {
        PathCheck {
            length,
            palette,
            budget: path_partition::DEFAULT_BUDGET,
        }
    }
}

/// Least `m` such that consecutive window members stay nested at every
/// stage from `m` on.
pub fn window_threshold(dec: &Decomposition, window: &[usize]) -> usize {
    let n = dec.stage_count;
    let nested = |s: usize| {
        window
            .windows(2)
            .all(|p| dec.stage(p[0], s).is_subset(dec.stage(p[1], s)))
    };
    let mut m = n;
    while m > 0 && nested(m - 1) {
        m -= 1;
    }
    m
}

#[derive(Clone, Debug)]
pub struct MgTactic {
    k: usize,
    members: Arc<Members>,
    dec: Arc<Decomposition>,
    full: Arc<HashMap<Vec<usize>, AtomSet>>,
}

/// Union of the stage-`n` pieces of the window members.
fn stage_union(dec: &Decomposition, window: &[usize], n: usize) -> AtomSet {
    window
        .iter()
        .fold(AtomSet::EMPTY, |acc, &i| acc | dec.stage(i, n))
}

/// Build the k-tactic. Short windows answer with their first stages; a full
/// window answers with the stage that is at least its color and at least its
/// coherence threshold.
pub fn build_mg_tactic(
    fam: &FamilySpec,
    dec: &Decomposition,
    col: &Coloring,
    k: usize,
    check: Option<PathCheck>,
) -> Result<MgTactic, LabError> {
    if k == 0 || col.arity != k {
        return Err(LabError::Inputs(format!(
            "coloring arity {} does not match k = {k}",
            col.arity
        )));
    }
    let bad = dec.structural_errors(fam);
    if !bad.is_empty() {
        return Err(LabError::Inputs(bad.join("; ")));
    }
    let members = Members::new(fam);
    let poset = members.poset();
    if let Some(pc) = check {
        let rep = find_bounded_path(&poset, col, pc.length, pc.palette, pc.budget)
            .map_err(|e| LabError::PathSearch(e.to_string()))?;
        if let Some(path) = rep.path {
            return Err(LabError::ColoringAdmitsPath {
                path,
                colors: rep.window_colors,
            });
        }
    }
    let mut full = HashMap::new();
    for w in increasing_tuples(&poset, k) {
        let c = col
            .get(&w)
            .ok_or_else(|| LabError::MissingColor(w.clone()))? as usize;
        let m = c.max(window_threshold(dec, &w));
        if m >= dec.stage_count {
            return Err(LabError::StageBudget {
                window: w,
                needed: m,
                stage_count: dec.stage_count,
            });
        }
        full.insert(w.clone(), stage_union(dec, &w, m));
    }
    Ok(MgTactic {
        k,
        members: Arc::new(members),
        dec: Arc::new(dec.clone()),
        full: Arc::new(full),
    })
}

impl Tactic for MgTactic {
    fn window(&self) -> usize {
        self.k
    }

    fn respond(&self, window: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        let idx: Vec<usize> = window
            .iter()
            .map(|&s| self.members.index_of(s))
            .collect::<Option<_>>()
            .ok_or_else(|| TacticError::Contract("window leaves the family".into()))?;
        if idx
            .windows(2)
            .any(|p| !self.members.sets[p[0]].is_proper_subset(self.members.sets[p[1]]))
        {
            return Err(TacticError::Contract(format!(
                "window {idx:?} is not strictly increasing"
            )));
        }
        if idx.len() < self.k {
            let first = 1.min(self.dec.stage_count - 1);
            return Ok(TwoMove::plain(stage_union(&self.dec, &idx, first)));
        }
        self.full
            .get(&idx)
            .map(|&t| TwoMove::plain(t))
            .ok_or_else(|| TacticError::Contract(format!("window {idx:?} has no move")))
    }

    fn label(&self) -> String {
        format!("mg-{}", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use coherent_decomp::decompose_locally_small;
    use path_partition::FinitePoset;

    fn chain3() -> FamilySpec {
        FamilySpec::from_bare(&[
            AtomSet::from_indices([0]),
            AtomSet::from_indices([0, 1, 2]),
            AtomSet::from_indices([0, 1, 2, 3, 4]),
        ])
    }

    #[test]
    fn constant_color_one_gives_first_stages() {
        let fam = chain3();
        let dec = decompose_locally_small(&fam, 4, None).unwrap();
        let col = Coloring::from_fn(&FinitePoset::chain(3), 2, 2, |_| 1);
        let t = build_mg_tactic(&fam, &dec, &col, 2, None).unwrap();
        let (a, b) = (fam.set(0), fam.set(1));
        assert!(window_threshold(&dec, &[0, 1]) <= 1);
        let mv = t.respond(&[a, b], 2).unwrap();
        assert_eq!(mv.t, dec.stage(0, 1) | dec.stage(1, 1));
        assert!(matches!(
            t.respond(&[b, a], 2),
            Err(TacticError::Contract(_))
        ));
    }

    #[test]
    fn rejects_colorings_with_paths() {
        let fam = chain3();
        let dec = decompose_locally_small(&fam, 4, None).unwrap();
        let col = Coloring::from_fn(&FinitePoset::chain(3), 2, 2, |_| 0);
        let err = build_mg_tactic(
            &fam,
            &dec,
            &col,
            2,
            Some(PathCheck::new(3, Palette::Count(1))),
        )
        .unwrap_err();
        assert!(matches!(err, LabError::ColoringAdmitsPath { .. }));
        let high = Coloring::from_fn(&FinitePoset::chain(3), 2, 9, |_| 9);
        assert!(matches!(
            build_mg_tactic(&fam, &dec, &high, 2, None),
            Err(LabError::StageBudget { .. })
        ));
    }

    #[test]
    fn threshold_of_a_corrupted_pair() {
        let dec = Decomposition {
            stages: vec![
                vec![AtomSet::from_indices([0]); 3],
                vec![
                    AtomSet::from_indices([1]),
                    AtomSet::from_indices([1]),
                    AtomSet::from_indices([0, 1]),
                ],
            ],
            stage_count: 3,
        };
        assert_eq!(window_threshold(&dec, &[0, 1]), 2);
    }
}
