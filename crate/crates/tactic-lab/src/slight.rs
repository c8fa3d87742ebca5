//! The instance separating `n`-tactics from `n+1`-tactics, at finite scale.
//!
//! Atoms are the finite sets `Z ⊆ λ` of size at most two (listed by size,
//! then lexicographically) followed by the points of a linear order `L`.
//! `X_α` holds the `Z` that miss `α`. The ideal is generated by the sets
//! `X_α ∪ (L minus its top)` together with the top point alone.

use crate::error::LabError;
use game_engine::{Arena, FnTactic, GameKind, Tactic, TacticError, TwoMove};
use ideal_core::{AtomSet, GroundSet, IdealInstance};
use path_partition::{find_bounded_path, increasing_tuples, Coloring, FinitePoset, Palette};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Largest size of the finite subsets of `λ` kept as atoms.
pub const FIN_MAX_SIZE: usize = 2;

/// Linear order of `size` points with a coloring of its `(n+1)`-tuples that
/// must admit no path of `path_length` using at most `palette_bound` colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSpec {
    pub size: usize,
    pub witness: Coloring,
    pub path_length: usize,
    pub palette_bound: usize,
}

impl OrderSpec {
    /// The frozen witness for `n + 1 = arity` over eight points with four
    /// colors: every 6-path sees at least three colors.
    pub fn standard(arity: usize) -> Option<OrderSpec> {
        let text = match arity {
            2 => include_str!("../data/slight_witness_2.json"),
            3 => include_str!("../data/slight_witness_3.json"),
            _ => return None,
        };
        let witness = serde_json::from_str(text).expect("frozen witness parses");
        Some(OrderSpec {
            size: 8,
            witness,
            path_length: 6,
            palette_bound: 2,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SlightInstance {
    pub lambda_size: usize,
    /// `t_i`: the finite set of `λ` carried by atom `i`.
    pub fin: Vec<Vec<usize>>,
    pub order_size: usize,
    pub instance: IdealInstance,
    /// `V_z = Fin ∪ {t ∈ L : t < z}` for each `z ∈ L`.
    pub menu: Vec<AtomSet>,
    pub witness_coloring: Coloring,
}

impl SlightInstance {
    pub fn fin_atoms(&self) -> AtomSet {
        AtomSet::prefix(self.fin.len())
    }

    pub fn point(&self, x: usize) -> usize {
        self.fin.len() + x
    }

    /// Points of `L` below `z`.
    pub fn below(&self, z: usize) -> AtomSet {
        AtomSet::from_indices((0..z).map(|x| self.point(x)))
    }

    pub fn l_atoms(&self) -> AtomSet {
        self.below(self.order_size)
    }

    pub fn x_alpha(&self, alpha: usize) -> AtomSet {
        AtomSet::from_indices((0..self.fin.len()).filter(|&i| !self.fin[i].contains(&alpha)))
    }

    /// `z` with `X ∩ L = {t < z}`, if the `L`-part is an initial segment.
    pub fn phi(&self, x: AtomSet) -> Option<usize> {
        let part = x.inter(self.l_atoms());
        let z = part.len();
        (part == self.below(z)).then_some(z)
    }

    /// Bit mask of the least `α` whose `X_α` holds the `Fin`-part of `t`;
    /// every bit when none does.
    pub fn trace_mask(&self, t: AtomSet) -> u64 {
        let part = t.inter(self.fin_atoms());
        if part.is_empty() {
            return 0;
        }
        (0..self.lambda_size)
            .find(|&a| part.is_subset(self.x_alpha(a)))
            .map_or((1u64 << self.lambda_size) - 1, |a| 1 << a)
    }

    pub fn chain_poset(&self) -> FinitePoset {
        FinitePoset::chain(self.order_size)
    }

    pub fn arena(&self) -> Arena {
        Arena::new(GameKind::MgFamily, self.instance.clone(), self.menu.clone())
    }

    fn move_for(&self, alpha: usize, last: AtomSet) -> TwoMove {
        TwoMove::plain(self.x_alpha(alpha) | last.inter(self.l_atoms()))
    }
}

fn fin_sets(lambda: usize) -> Vec<Vec<usize>> {
    let chain = FinitePoset::chain(lambda);
    let mut out = vec![Vec::new()];
    for size in 1..=FIN_MAX_SIZE.min(lambda) {
        out.extend(increasing_tuples(&chain, size));
    }
    out
}

/// The `n+1`-tactic: nothing until the window fills, then `X_α` plus the
/// `L`-part of the newest move, where `α` is the witness color of the
/// window's `L`-cuts, or, if the cuts repeat, the least new atom's index
/// reduced mod `λ`.
#[derive(Clone, Debug)]
pub struct SlightTactic {
    inst: Arc<SlightInstance>,
    k: usize,
}

impl Tactic for SlightTactic {
    fn window(&self) -> usize {
        self.k
    }

    fn respond(&self, window: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        if window.len() < self.k {
            return Ok(TwoMove::default());
        }
        let s = &self.inst;
        let cuts: Vec<usize> = window
            .iter()
            .map(|&u| s.phi(u))
            .collect::<Option<_>>()
            .ok_or_else(|| {
                TacticError::Contract("move's L-part is not an initial segment".into())
            })?;
        let last = *window.last().unwrap();
        if cuts.windows(2).all(|p| p[0] < p[1]) {
            let alpha = s
                .witness_coloring
                .get(&cuts)
                .ok_or_else(|| TacticError::Contract(format!("cuts {cuts:?} are uncolored")))?;
            return Ok(s.move_for(alpha as usize, last));
        }
        let fin = s.fin_atoms();
        let fresh = window
            .windows(2)
            .filter_map(|p| p[1].minus(p[0]).inter(fin).first())
            .min()
            .ok_or_else(|| TacticError::Contract("repeated cuts with no new finite set".into()))?;
        Ok(s.move_for(fresh % s.lambda_size, last))
    }

    fn label(&self) -> String {
        format!("slight-{}", self.k)
    }
}

pub fn build_slight_instance(
    n: usize,
    lambda_size: usize,
    spec: OrderSpec,
) -> Result<(SlightInstance, SlightTactic), LabError> {
    let k = n + 1;
    if !(FIN_MAX_SIZE + 1..=16).contains(&lambda_size) || spec.size < 2 {
        return Err(LabError::Inputs(
            "need 3 <= λ <= 16 and at least two points".into(),
        ));
    }
    if spec.witness.arity != k {
        return Err(LabError::Inputs(format!(
            "witness arity {} but n + 1 = {k}",
            spec.witness.arity
        )));
    }
    let fin = fin_sets(lambda_size);
    let atoms = fin.len() + spec.size;
    if atoms > ideal_core::MAX_ATOMS {
        return Err(LabError::Inputs(format!("{atoms} atoms exceed the limit")));
    }
    let chain = FinitePoset::chain(spec.size);
    for w in increasing_tuples(&chain, k) {
        match spec.witness.get(&w) {
            Some(c) if (c as usize) < lambda_size => {}
            Some(c) => {
                return Err(LabError::Inputs(format!(
                    "color {c} of {w:?} is not below λ"
                )))
            }
            None => return Err(LabError::MissingColor(w)),
        }
    }
    let rep = find_bounded_path(
        &chain,
        &spec.witness,
        spec.path_length,
        Palette::Count(spec.palette_bound),
        path_partition::DEFAULT_BUDGET,
    )
    .map_err(|e| LabError::PathSearch(e.to_string()))?;
    if let Some(path) = rep.path {
        return Err(LabError::ColoringAdmitsPath {
            path,
            colors: rep.window_colors,
        });
    }
    let mut inst = SlightInstance {
        lambda_size,
        fin,
        order_size: spec.size,
        instance: IdealInstance::new(GroundSet::range(0), Vec::new(), lambda_size - 1),
        menu: Vec::new(),
        witness_coloring: spec.witness,
    };
    let bounded = inst.below(spec.size - 1);
    let mut gens: Vec<AtomSet> = (0..lambda_size)
        .map(|a| inst.x_alpha(a) | bounded)
        .collect();
    gens.push(AtomSet::singleton(inst.point(spec.size - 1)));
    inst.instance = IdealInstance::new(GroundSet::range(atoms), gens, lambda_size - 1);
    inst.menu = (0..spec.size)
        .map(|z| inst.fin_atoms() | inst.below(z))
        .collect();
    let inst = Arc::new(inst);
    Ok(((*inst).clone(), SlightTactic { inst, k }))
}

/// A seeded `k`-tactic that answers each window of cuts with `X_c` for a
/// color `c` drawn once per window, plus the newest `L`-part.
pub fn random_candidate(inst: &SlightInstance, k: usize, seed: u64) -> FnTactic {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let chain = inst.chain_poset();
    let table: HashMap<Vec<usize>, usize> = (1..=k)
        .flat_map(|len| increasing_tuples(&chain, len))
        .map(|w| (w, rng.gen_range(0..inst.lambda_size)))
        .collect();
    let inst = Arc::new(inst.clone());
    FnTactic::new(k, format!("random-{k}-{seed}"), move |window, _| {
        let cuts: Option<Vec<usize>> = window.iter().map(|&u| inst.phi(u)).collect();
        let alpha = cuts.and_then(|c| table.get(&c).copied()).unwrap_or(0);
        Ok(inst.move_for(alpha, *window.last().expect("windows are nonempty")))
    })
}

/// Baseline 2-tactic: cover the least finite set ONE just added, or `X_0`
/// when nothing new appeared.
pub fn greedy_cover(inst: &SlightInstance) -> FnTactic {
    let inst = Arc::new(inst.clone());
    FnTactic::new(2, "greedy-cover", move |window, _| {
        let last = *window.last().expect("windows are nonempty");
        let prev = if window.len() == 2 {
            window[0]
        } else {
            AtomSet::EMPTY
        };
        let fresh = last
            .minus(prev)
            .inter(inst.fin_atoms())
            .first()
            .unwrap_or(0);
        Ok(inst.move_for(fresh % inst.lambda_size, last))
    })
}
