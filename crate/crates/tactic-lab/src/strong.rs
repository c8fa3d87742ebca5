//! 2-tactics for the strong and very strong games, built from a k-tactic
//! for the monotone game, plus the translations between the two.
//!
//! Both constructions feed the base tactic a simulated monotone play: each
//! ONE move `A` is pushed up a ladder `A_1 ⊂ ... ⊂ A_k` of members, and TWO
//! answers every window of the simulated play that ends inside the newest
//! ladder.

use crate::error::LabError;
use crate::family::Members;
use crate::phi::PhiMaps;
use game_engine::{Tactic, TacticError, TwoMove};
use ideal_core::{AtomSet, FamilySpec};
use path_partition::{increasing_tuples, FinitePoset};
use std::sync::Arc;

fn contract(msg: &str) -> TacticError {
    TacticError::Contract(msg.into())
}

/// Union of base answers to the windows `seq[i..i + j]` for each
/// `j = 1..=k` that ends inside the final ladder.
fn simulated_windows(
    base: &dyn Tactic,
    old: &[AtomSet],
    new: &[AtomSet],
) -> Result<AtomSet, TacticError> {
    let k = new.len();
    let mut t = AtomSet::EMPTY;
    for i in 1..=k {
        let start = old.len().saturating_sub(k - i);
        let w: Vec<AtomSet> = old[start..].iter().chain(&new[..i]).copied().collect();
        t |= base.respond(&w, w.len())?.t;
    }
    Ok(t)
}

fn check_base(base: &dyn Tactic) -> Result<usize, LabError> {
    let k = base.window();
    if base.is_markov() || k == 0 {
        return Err(LabError::BadBase(k));
    }
    Ok(k)
}

/// Strong-game 2-tactic over Φ-maps.
#[derive(Clone)]
pub struct SmgTwoTactic {
    base: Arc<dyn Tactic>,
    maps: PhiMaps,
    k: usize,
}

pub fn build_smg_two_tactic(
    base: Arc<dyn Tactic>,
    maps: PhiMaps,
) -> Result<SmgTwoTactic, LabError> {
    let k = check_base(base.as_ref())?;
    Ok(SmgTwoTactic { base, maps, k })
}

impl SmgTwoTactic {
    /// `A_1 = Φ₂(A)`, `A_{j+1} = Φ₂(A_j)`.
    pub fn ladder(&self, a: AtomSet) -> Result<Vec<AtomSet>, TacticError> {
        let mut out = Vec::with_capacity(self.k);
        let mut cur = a;
        for _ in 0..self.k {
            cur = self.maps.phi2(cur)?;
            out.push(cur);
        }
        Ok(out)
    }

    fn psi(&self, a: AtomSet, ladder: &[AtomSet]) -> Result<AtomSet, TacticError> {
        std::iter::once(a)
            .chain(ladder.iter().copied())
            .try_fold(AtomSet::EMPTY, |acc, x| Ok(acc | self.maps.phi1(x)?))
    }

    fn fresh(&self, a: AtomSet) -> Result<AtomSet, TacticError> {
        let l = self.ladder(a)?;
        Ok(simulated_windows(self.base.as_ref(), &[], &l)? | self.psi(a, &l)?)
    }
}

impl Tactic for SmgTwoTactic {
    fn window(&self) -> usize {
        2
    }

    fn respond(&self, window: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        match *window {
            [a] => self.fresh(a).map(TwoMove::plain),
            [a, b] => {
                let la = self.ladder(a)?;
                let lb = self.ladder(b)?;
                if a.is_proper_subset(b) && la[self.k - 1].is_proper_subset(lb[0]) {
                    let t =
                        simulated_windows(self.base.as_ref(), &la[1..], &lb)? | self.psi(b, &lb)?;
                    Ok(TwoMove::plain(t))
                } else {
                    self.fresh(b).map(TwoMove::plain)
                }
            }
            _ => Err(contract("window must have one or two sets")),
        }
    }

    fn label(&self) -> String {
        format!("smg-2<{}>", self.base.label())
    }
}

/// Very-strong-game 2-tactic: ladders climb by canonical strict
/// supersets, and the declared set is one more step up.
#[derive(Clone)]
pub struct VsgTwoTactic {
    base: Arc<dyn Tactic>,
    members: Arc<Members>,
    k: usize,
}

pub fn build_vsg_two_tactic(
    base: Arc<dyn Tactic>,
    fam: &FamilySpec,
) -> Result<VsgTwoTactic, LabError> {
    let k = check_base(base.as_ref())?;
    Ok(VsgTwoTactic {
        base,
        members: Arc::new(Members::new(fam)),
        k,
    })
}

impl VsgTwoTactic {
    fn step(&self, x: AtomSet) -> Result<AtomSet, TacticError> {
        self.members
            .least_above(x)
            .map(|i| self.members.sets[i])
            .ok_or_else(|| {
                TacticError::Ceiling(format!("no member strictly above {:?}", x.to_vec()))
            })
    }

    /// Ladder `A_1..A_k` followed by `Ψ`.
    pub fn ladder(&self, x: AtomSet) -> Result<Vec<AtomSet>, TacticError> {
        let mut out = Vec::with_capacity(self.k + 1);
        let mut cur = x;
        for _ in 0..=self.k {
            cur = self.step(cur)?;
            out.push(cur);
        }
        Ok(out)
    }

    fn fresh(&self, y: AtomSet) -> Result<TwoMove, TacticError> {
        let l = self.ladder(y)?;
        let t = simulated_windows(self.base.as_ref(), &[], &l[..self.k])?;
        Ok(TwoMove { t, s: l[self.k] })
    }
}

impl Tactic for VsgTwoTactic {
    fn window(&self) -> usize {
        2
    }

    fn respond(&self, window: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        match *window {
            [x] => self.fresh(x),
            [x, y] => {
                let lx = self.ladder(x)?;
                if x.is_proper_subset(y) && lx[self.k].is_proper_subset(y) {
                    let ly = self.ladder(y)?;
                    let t = simulated_windows(self.base.as_ref(), &lx[1..self.k], &ly[..self.k])?;
                    Ok(TwoMove { t, s: ly[self.k] })
                } else {
                    self.fresh(y)
                }
            }
            _ => Err(contract("window must have one or two sets")),
        }
    }

    fn label(&self) -> String {
        format!("vsg-2<{}>", self.base.label())
    }
}

/// A strong-game tactic read as a very-strong one: declare ONE's move
/// together with the answer.
#[derive(Clone)]
pub struct SmgAsVsg(pub Arc<dyn Tactic>);

impl Tactic for SmgAsVsg {
    fn window(&self) -> usize {
        self.0.window()
    }
    fn is_markov(&self) -> bool {
        self.0.is_markov()
    }
    fn respond(&self, window: &[AtomSet], inning: usize) -> Result<TwoMove, TacticError> {
        let last = *window.last().ok_or_else(|| contract("empty window"))?;
        let t = self.0.respond(window, inning)?.t;
        Ok(TwoMove { t, s: last | t })
    }
    fn label(&self) -> String {
        format!("as-vsg<{}>", self.0.label())
    }
}

/// An increasing chain of members, each with an escape atom outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalChain {
    pub members: Vec<AtomSet>,
    pub escapes: Vec<usize>,
}

impl CofinalChain {
    /// Least index whose member strictly contains `x`.
    pub fn alpha(&self, x: AtomSet) -> Option<usize> {
        self.members.iter().position(|&m| x.is_proper_subset(m))
    }

    fn validate(&self) -> Result<(), LabError> {
        if self.members.is_empty() || self.members.len() != self.escapes.len() {
            return Err(LabError::Inputs(
                "chain needs one escape atom per member".into(),
            ));
        }
        if self
            .members
            .windows(2)
            .any(|p| !p[0].is_proper_subset(p[1]))
        {
            return Err(LabError::Inputs("chain is not strictly increasing".into()));
        }
        if let Some(i) =
            (0..self.members.len()).find(|&i| self.members[i].contains(self.escapes[i]))
        {
            return Err(LabError::Inputs(format!(
                "escape atom of member {i} lies inside it"
            )));
        }
        Ok(())
    }
}

/// Greedy absorbing chain for a very-strong tactic: each next member is the
/// canonical one strictly above the current member and every answer the
/// tactic gives to chain windows ending at the current member.
pub fn absorbing_chain(tactic: &dyn Tactic, fam: &FamilySpec, start: AtomSet) -> CofinalChain {
    let m = Members::new(fam);
    let mut members = vec![start];
    'grow: loop {
        let j = members.len() - 1;
        let mut need = members[j];
        for w in chain_windows_ending_at(j, tactic.window()) {
            let sets: Vec<AtomSet> = w.iter().map(|&i| members[i]).collect();
            match tactic.respond(&sets, sets.len()) {
                Ok(mv) => need |= mv.t | mv.s,
                Err(_) => break 'grow,
            }
        }
        match m.least_above(need) {
            Some(i) => members.push(m.sets[i]),
            None => break,
        }
    }
    let escapes = members
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let outside = members.get(i + 1).map_or(AtomSet(!s.0), |&n| n.minus(s));
            outside
                .first()
                .expect("a member is never the full atom range")
        })
        .collect();
    CofinalChain { members, escapes }
}

/// Increasing index tuples of length `1..=k` ending at `j`.
fn chain_windows_ending_at(j: usize, k: usize) -> Vec<Vec<usize>> {
    let p = FinitePoset::chain(j + 1);
    (1..=k)
        .flat_map(|len| increasing_tuples(&p, len))
        .filter(|w| w.last() == Some(&j))
        .collect()
}

/// Strong-game tactic simulated through a very-strong one along a chain.
#[derive(Clone)]
pub struct VsgAsSmg {
    inner: Arc<dyn Tactic>,
    chain: Arc<CofinalChain>,
}

/// Translate a very-strong tactic into a strong one. The chain must sit
/// cofinally above `menu` and absorb every answer to chain windows.
pub fn translate_vsg_to_smg(
    inner: Arc<dyn Tactic>,
    chain: CofinalChain,
    menu: &[AtomSet],
) -> Result<VsgAsSmg, LabError> {
    chain.validate()?;
    if let Some(i) = menu.iter().position(|&x| chain.alpha(x).is_none()) {
        return Err(LabError::NotCofinal(i));
    }
    let k = inner.window();
    for j in 0..chain.members.len().saturating_sub(1) {
        for w in chain_windows_ending_at(j, k) {
            let sets: Vec<AtomSet> = w.iter().map(|&i| chain.members[i]).collect();
            let ok = inner
                .respond(&sets, sets.len())
                .is_ok_and(|mv| (mv.t | mv.s).is_proper_subset(chain.members[j + 1]));
            if !ok {
                return Err(LabError::NotAbsorbing(w));
            }
        }
    }
    Ok(VsgAsSmg {
        inner,
        chain: Arc::new(chain),
    })
}

impl Tactic for VsgAsSmg {
    fn window(&self) -> usize {
        self.inner.window()
    }

    fn respond(&self, window: &[AtomSet], inning: usize) -> Result<TwoMove, TacticError> {
        let alphas: Vec<usize> = window
            .iter()
            .map(|&x| self.chain.alpha(x))
            .collect::<Option<_>>()
            .ok_or_else(|| TacticError::Ceiling("move lies above the chain".into()))?;
        let last = *alphas.last().ok_or_else(|| contract("empty window"))?;
        let escape = *self
            .chain
            .escapes
            .get(last + 1)
            .ok_or_else(|| TacticError::Ceiling("chain has no escape above the move".into()))?;
        let mut t = AtomSet::singleton(escape);
        if alphas.windows(2).all(|p| p[0] < p[1]) {
            let sets: Vec<AtomSet> = alphas.iter().map(|&a| self.chain.members[a]).collect();
            t |= self.inner.respond(&sets, inning)?.t;
        }
        Ok(TwoMove::plain(t))
    }

    fn label(&self) -> String {
        format!("as-smg<{}>", self.inner.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    SmgToVsg,
    VsgToSmg,
}

/// Translate between strong and very strong tactics. The chain is needed
/// only for the very-strong-to-strong direction.
pub fn translate_smg_vsg(
    tactic: Arc<dyn Tactic>,
    direction: Direction,
    chain: Option<CofinalChain>,
    menu: &[AtomSet],
) -> Result<Arc<dyn Tactic>, LabError> {
    match direction {
        Direction::SmgToVsg => Ok(Arc::new(SmgAsVsg(tactic))),
        Direction::VsgToSmg => {
            let chain =
                chain.ok_or_else(|| LabError::Inputs("a cofinal chain is required".into()))?;
            Ok(Arc::new(translate_vsg_to_smg(tactic, chain, menu)?))
        }
    }
}
