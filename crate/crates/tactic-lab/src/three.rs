//! A 3-tactic for the very strong game over a family of small members.
//!
//! Ingredients: an increasing chain `C_ξ` whose union escapes every member,
//! a listing `J_ξ(A)` of the members below each `A`, a family `𝓑` of sets
//! of member indices with its own decomposition and a pair coloring `K`,
//! and a decomposition of the members themselves.

use crate::error::LabError;
use crate::family::Members;
use crate::upsilon::window_threshold;
use coherent_decomp::{decompose_locally_small, Decomposition};
use game_engine::{Tactic, TacticError, TwoMove};
use ideal_core::{AtomSet, FamilySpec};
use path_partition::Coloring;
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct VsgThreeInputs {
    pub family: FamilySpec,
    pub c_chain: Vec<AtomSet>,
    /// `enumerations[a][ξ]` is the member index `J_ξ(A_a)`.
    pub enumerations: Vec<Vec<usize>>,
    /// Members of `𝓑`, each a set of member indices.
    pub b_family: Vec<AtomSet>,
    /// Pair coloring of `𝓑`, keyed by `𝓑` indices.
    pub b_coloring: Coloring,
    pub stage_count: usize,
    pub decomposition: Decomposition,
    /// `Φ₃(A_a)` as a member index; `None` where no member fits.
    pub phi3: Vec<Option<usize>>,
}

impl VsgThreeInputs {
    /// Canonical `Φ₃`: the least member holding `A ∪ C_{ξ_A}`.
    pub fn canonical_phi3(family: &FamilySpec, c_chain: &[AtomSet]) -> Vec<Option<usize>> {
        let m = Members::new(family);
        (0..m.len())
            .map(|a| {
                let xi = c_chain.iter().position(|c| !c.is_subset(m.sets[a]))?;
                m.least_containing(m.sets[a] | c_chain[xi])
            })
            .collect()
    }
}

#[derive(Clone)]
pub struct VsgThreeTactic {
    inner: Arc<Inner>,
}

struct Inner {
    members: Members,
    c_chain: Vec<AtomSet>,
    enumerations: Vec<Vec<usize>>,
    b_members: Members,
    b_dec: Decomposition,
    b_coloring: Coloring,
    dec: Decomposition,
    phi3: Vec<Option<usize>>,
}

pub fn build_vsg_three_tactic(inputs: VsgThreeInputs) -> Result<VsgThreeTactic, LabError> {
    let members = Members::new(&inputs.family);
    let n = members.len();
    let bad = |m: String| Err(LabError::Inputs(m));
    if inputs.c_chain.is_empty()
        || inputs
            .c_chain
            .windows(2)
            .any(|p| !p[0].is_proper_subset(p[1]))
    {
        return bad("C-chain must be nonempty and strictly increasing".into());
    }
    let top = *inputs.c_chain.last().unwrap();
    if let Some(i) = (0..n).find(|&i| top.is_subset(members.sets[i])) {
        return bad(format!("C-chain union lies inside member {i}"));
    }
    if inputs.enumerations.len() != n {
        return bad("one enumeration per member is required".into());
    }
    for (a, en) in inputs.enumerations.iter().enumerate() {
        let listed: BTreeSet<usize> = en.iter().copied().collect();
        let below: BTreeSet<usize> = (0..n)
            .filter(|&x| members.sets[x].is_subset(members.sets[a]))
            .collect();
        if listed != below || listed.len() != en.len() {
            return bad(format!(
                "enumeration of member {a} must list each member below it once"
            ));
        }
    }
    if let Some(b) = inputs.b_family.iter().find(|b| b.iter().any(|i| i >= n)) {
        return bad(format!("𝓑 member {:?} names unknown members", b.to_vec()));
    }
    if inputs.phi3.len() != n {
        return bad("one Φ₃ entry per member is required".into());
    }
    for (a, p) in inputs.phi3.iter().enumerate() {
        let Some(xi) = inputs
            .c_chain
            .iter()
            .position(|c| !c.is_subset(members.sets[a]))
        else {
            return bad(format!("C-chain lies inside member {a}"));
        };
        if let Some(&p) = p.as_ref() {
            if p >= n || !(members.sets[a] | inputs.c_chain[xi]).is_subset(members.sets[p]) {
                return bad(format!("Φ₃ of member {a} misses A ∪ C_ξ"));
            }
        }
    }
    let b_spec = FamilySpec::from_bare(&inputs.b_family);
    let b_members = Members::new(&b_spec);
    if b_members.len() != inputs.b_family.len() {
        return bad("𝓑 has repeated members".into());
    }
    let b_dec = decompose_locally_small(&b_spec, inputs.stage_count, None)?;
    let errs = inputs.decomposition.structural_errors(&inputs.family);
    if !errs.is_empty() {
        return bad(errs.join("; "));
    }
    Ok(VsgThreeTactic {
        inner: Arc::new(Inner {
            members,
            c_chain: inputs.c_chain,
            enumerations: inputs.enumerations,
            b_members,
            b_dec,
            b_coloring: inputs.b_coloring,
            dec: inputs.decomposition,
            phi3: inputs.phi3,
        }),
    })
}

fn ceiling(msg: String) -> TacticError {
    TacticError::Ceiling(msg)
}

impl Inner {
    fn set(&self, i: usize) -> AtomSet {
        self.members.sets[i]
    }

    /// Least `ξ` with `C_ξ ⊄ A`.
    fn escape_index(&self, a: usize) -> usize {
        self.c_chain
            .iter()
            .position(|c| !c.is_subset(self.set(a)))
            .expect("validated at build")
    }

    fn c(&self, xi: usize) -> Result<AtomSet, TacticError> {
        self.c_chain
            .get(xi)
            .copied()
            .ok_or_else(|| ceiling(format!("C-chain has no entry {xi}")))
    }

    /// Every sequence `B, A, S_3, ...` where each next entry is a proper
    /// `J_ξ` of the current one with `C_ξ` inside the entry before.
    fn tau(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut seq = vec![b, a];
        self.extend(&mut seq, &mut out);
        out
    }

    fn extend(&self, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(seq.clone());
        let (prev, cur) = (seq[seq.len() - 2], seq[seq.len() - 1]);
        for (xi, &next) in self.enumerations[cur].iter().enumerate() {
            let Some(&c) = self.c_chain.get(xi) else {
                break;
            };
            if c.is_subset(self.set(prev)) && self.set(next).is_proper_subset(self.set(cur)) {
                seq.push(next);
                self.extend(seq, out);
                seq.pop();
            }
        }
    }

    fn f_set(&self, a: usize, b: usize) -> AtomSet {
        self.tau(a, b).into_iter().flatten().collect()
    }

    /// Least `𝓑` member holding every `F(X, Y)` for nested pairs along the
    /// sequences of `τ(A, B)`.
    fn phi1(&self, a: usize, b: usize) -> Result<usize, TacticError> {
        let mut need = AtomSet::EMPTY;
        for seq in self.tau(a, b) {
            for (i, &y) in seq.iter().enumerate() {
                for &x in &seq[i + 1..] {
                    if self.set(x).is_proper_subset(self.set(y)) {
                        need |= self.f_set(x, y);
                    }
                }
            }
        }
        self.b_members
            .least_containing(need)
            .ok_or_else(|| ceiling(format!("no 𝓑 member holds {:?}", need.to_vec())))
    }

    fn b_union(&self, bi: usize) -> AtomSet {
        self.b_members.sets[bi]
            .iter()
            .fold(AtomSet::EMPTY, |acc, i| acc | self.set(i))
    }

    fn above(&self, need: AtomSet) -> Result<AtomSet, TacticError> {
        self.members
            .least_above(need)
            .map(|i| self.set(i))
            .ok_or_else(|| ceiling(format!("no member strictly above {:?}", need.to_vec())))
    }

    fn phi2(&self, a: usize, b: usize) -> Result<AtomSet, TacticError> {
        let xi = self.enumerations[b]
            .iter()
            .position(|&x| x == a)
            .expect("a lies below b");
        let need = self.c(xi)? | self.c(self.escape_index(b))? | self.b_union(self.phi1(a, b)?);
        self.above(need)
    }

    fn phi3(&self, a: usize) -> Result<AtomSet, TacticError> {
        self.phi3[a]
            .map(|i| self.set(i))
            .ok_or_else(|| ceiling(format!("member {a} has no Φ₃")))
    }

    /// Stage index for the pair `P ⊆ Q` of `𝓑` members.
    fn stage_for(&self, p: usize, q: usize, triple: &[usize]) -> Result<usize, TacticError> {
        let n = self.b_dec.stage_count;
        let m = if p == q {
            0
        } else {
            let color = self.b_coloring.get(&[p, q]).ok_or_else(|| {
                TacticError::Contract(format!(
                    "window {triple:?} reaches an uncolored 𝓑 pair ({p}, {q})"
                ))
            })?;
            (color as usize).max(window_threshold(&self.b_dec, &[p, q]))
        };
        if m >= n {
            return Err(TacticError::Contract(format!(
                "window {triple:?} needs stage {m} of {n}"
            )));
        }
        Ok(m)
    }

    fn respond(&self, idx: &[usize]) -> Result<TwoMove, TacticError> {
        let strict = |x: usize, y: usize| self.set(x).is_proper_subset(self.set(y));
        match *idx {
            [a] => Ok(TwoMove {
                t: AtomSet::EMPTY,
                s: self.phi3(a)?,
            }),
            [a, b] if strict(a, b) => Ok(TwoMove {
                t: AtomSet::EMPTY,
                s: self.phi2(a, b)?,
            }),
            [_, b] => self.respond(&[b]),
            [a, b, c]
                if strict(a, b) && strict(b, c) && self.phi2(a, b)?.is_subset(self.set(c)) =>
            {
                let (p, q) = (self.phi1(a, b)?, self.phi1(b, c)?);
                let m = self.stage_for(p, q, idx)?;
                let d = self
                    .b_dec
                    .stage(q, m)
                    .iter()
                    .fold(AtomSet::EMPTY, |acc, e| acc | self.dec.stage(e, m));
                Ok(TwoMove {
                    t: d,
                    s: self.phi2(b, c)?,
                })
            }
            [_, b, c] => self.respond(&[b, c]),
            _ => Err(TacticError::Contract(
                "window must hold one to three sets".into(),
            )),
        }
    }
}

impl VsgThreeTactic {
    /// `τ(A, B)` as member-index sequences, in search order.
    pub fn tau(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        self.inner.tau(a, b)
    }

    pub fn phi1(&self, a: usize, b: usize) -> Result<AtomSet, TacticError> {
        self.inner.phi1(a, b).map(|i| self.inner.b_members.sets[i])
    }
}

impl Tactic for VsgThreeTactic {
    fn window(&self) -> usize {
        3
    }

    fn respond(&self, window: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        let idx: Vec<usize> = window
            .iter()
            .map(|&s| self.inner.members.index_of(s))
            .collect::<Option<_>>()
            .ok_or_else(|| TacticError::Contract("window leaves the family".into()))?;
        self.inner.respond(&idx)
    }

    fn label(&self) -> String {
        "vsg-3".into()
    }
}
