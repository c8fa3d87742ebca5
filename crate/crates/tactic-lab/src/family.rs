//! Lookups over a finite family shared by the builders.

use ideal_core::{rank_family, AtomSet, FamilySpec};
use path_partition::FinitePoset;
use std::collections::HashMap;

/// A family with index lookup, ranks and its strict-inclusion poset.
#[derive(Clone, Debug)]
pub struct Members {
    pub sets: Vec<AtomSet>,
    pub rank: Vec<usize>,
    index: HashMap<AtomSet, usize>,
}

impl Members {
    pub fn new(fam: &FamilySpec) -> Self {
        let sets = fam.sets();
        let rank = rank_family(fam).expect("finite families are well-founded");
        let index = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Members { sets, rank, index }
    }

    pub fn from_sets(sets: &[AtomSet]) -> Self {
        Members::new(&FamilySpec::from_bare(sets))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, s: AtomSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    /// Canonical order: smaller sets first, then by index.
    fn canonical(&self) -> impl Iterator<Item = usize> + '_ {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.sets[i].len(), i));
        order.into_iter()
    }

    /// Canonical member containing `x`.
    pub fn least_containing(&self, x: AtomSet) -> Option<usize> {
        self.canonical().find(|&i| x.is_subset(self.sets[i]))
    }

    /// Canonical member strictly containing `x`.
    pub fn least_above(&self, x: AtomSet) -> Option<usize> {
        self.canonical().find(|&i| x.is_proper_subset(self.sets[i]))
    }

    pub fn poset(&self) -> FinitePoset {
        let labels = (0..self.len()).map(|i| i.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| self.sets[a].is_proper_subset(self.sets[b]))
            .collect();
        FinitePoset::new(labels, &pairs).expect("strict inclusion is a strict order")
    }

    pub fn height(&self) -> usize {
        self.rank.iter().max().map_or(0, |r| r + 1)
    }
}
