//! Coherent decompositions of finite well-founded families.
//!
//! Every member `A` gets an increasing list of stages `A^0 ⊆ ... ⊆ A^{N-1} = A`.
//! The family is coherent when `A ⊂ B` forces `A^n ⊆ B^n` from some index on.
//! Members are processed by rank, so everything below `B` is already
//! decomposed when `B`'s stages are chosen.

use ideal_core::{locally_small_check, rank_family, AtomSet, FamilySpec, IdealInstance};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("stage count must be positive")]
    NoStages,
    #[error("family is not well-founded: {0}")]
    Family(String),
    #[error("members {violations:?} exceed the local bound {bound}")]
    NotLocallySmall {
        bound: usize,
        violations: Vec<usize>,
    },
    #[error(
        "pair ({lower},{upper}) is not coherent with {stage_count} stages; {needed} would suffice"
    )]
    TooFewStages {
        lower: usize,
        upper: usize,
        stage_count: usize,
        needed: usize,
    },
    #[error("ladder too tight for member {member} of size {size}")]
    LadderTooTight { member: usize, size: usize },
    #[error("ladder bounds must be positive and strictly increasing")]
    BadLadder,
    #[error("member {0} carries a generator the instance does not have")]
    UnknownGenerator(usize),
}

/// Stage lists per member, indexed like the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub stages: Vec<Vec<AtomSet>>,
    pub stage_count: usize,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, &Vec<AtomSet>> = self
            .stages
            .iter()
            .enumerate()
            .map(|(i, st)| (i.to_string(), st))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map: BTreeMap<String, Vec<AtomSet>> = BTreeMap::deserialize(d)?;
        let mut indexed: Vec<(usize, Vec<AtomSet>)> = map
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|i| (i, v))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<Result<_, _>>()?;
        indexed.sort_by_key(|(i, _)| *i);
        if indexed.iter().enumerate().any(|(pos, (i, _))| pos != *i) {
            return Err(serde::de::Error::custom("member indices must be 0..n"));
        }
        let stage_count = indexed.first().map_or(0, |(_, v)| v.len());
        if indexed.iter().any(|(_, v)| v.len() != stage_count) {
            return Err(serde::de::Error::custom(
                "members have different stage counts",
            ));
        }
        Ok(Decomposition {
            stages: indexed.into_iter().map(|(_, v)| v).collect(),
            stage_count,
        })
    }
}

impl Decomposition {
    pub fn stage(&self, member: usize, n: usize) -> AtomSet {
        self.stages[member][n.min(self.stage_count - 1)]
    }

    /// Structural problems: non-increasing stages or a final stage that is
    /// not the member itself.
    pub fn structural_errors(&self, fam: &FamilySpec) -> Vec<String> {
        let mut out = Vec::new();
        if self.stages.len() != fam.len() {
            out.push(format!(
                "{} stage lists for {} members",
                self.stages.len(),
                fam.len()
            ));
            return out;
        }
        for (i, st) in self.stages.iter().enumerate() {
            if st.len() != self.stage_count {
                out.push(format!("member {i} has {} stages", st.len()));
                continue;
            }
            for n in 1..st.len() {
                if !st[n - 1].is_subset(st[n]) {
                    out.push(format!("member {i}: stage {} not inside stage {n}", n - 1));
                }
            }
            if st.last() != Some(&fam.set(i)) {
                out.push(format!("member {i}: final stage is not the member"));
            }
        }
        out
    }
}

/// Members in processing order: by rank, then by index.
fn by_rank(fam: &FamilySpec) -> Result<Vec<usize>, DecompError> {
    let rank = rank_family(fam).map_err(|e| DecompError::Family(e.to_string()))?;
    let mut order: Vec<usize> = (0..fam.len()).collect();
    order.sort_by_key(|&i| (rank[i], i));
    Ok(order)
}

/// Prefix of `set` holding its first `count` atoms.
fn first_atoms(set: AtomSet, count: usize) -> AtomSet {
    set.iter().take(count).collect()
}

/// Position of the last atom of `sub` within the canonical listing of `sup`.
fn last_position(sub: AtomSet, sup: AtomSet) -> usize {
    let atoms = sup.to_vec();
    sub.iter()
        .map(|a| atoms.iter().position(|&b| b == a).expect("sub inside sup"))
        .max()
        .unwrap_or(0)
}

fn atom_mode(fam: &FamilySpec, stage_count: usize) -> Result<Decomposition, DecompError> {
    let mut stages: Vec<Vec<AtomSet>> = vec![Vec::new(); fam.len()];
    for b in by_rank(fam)? {
        let whole = fam.set(b);
        let size = whole.len();
        let below = fam.below(b);
        let mut st = Vec::with_capacity(stage_count);
        // f(n): index of the last single-atom piece S_j = {b_j} used at stage n
        let mut prev: Option<usize> = None;
        for n in 0..stage_count {
            let demand = below
                .iter()
                .map(|&a| 1 + last_position(stages[a][n], whole))
                .max()
                .unwrap_or(0);
            let f = demand.max(prev.map_or(0, |p| p + 1));
            prev = Some(f);
            st.push(if n + 1 == stage_count {
                whole
            } else {
                first_atoms(whole, (f + 1).min(size))
            });
        }
        stages[b] = st;
    }
    Ok(Decomposition {
        stages,
        stage_count,
    })
}

/// First incoherent pair of `dec`, if any.
fn first_failure(fam: &FamilySpec, dec: &Decomposition) -> Option<(usize, usize)> {
    verify_coherence(fam, dec)
        .into_iter()
        .find(|c| matches!(c.outcome, Coherence::Failure { .. }))
        .map(|c| (c.lower, c.upper))
}

/// Accept `dec` if coherent; otherwise rebuild with more stages to report
/// the least count that works.
fn check_coherent(
    fam: &FamilySpec,
    dec: Decomposition,
    rebuild: impl Fn(usize) -> Result<Decomposition, DecompError>,
) -> Result<Decomposition, DecompError> {
    let Some((lower, upper)) = first_failure(fam, &dec) else {
        return Ok(dec);
    };
    let stage_count = dec.stage_count;
    let mut needed = stage_count + 1;
    while first_failure(fam, &rebuild(needed)?).is_some() {
        needed += 1;
        if needed > stage_count + fam.len() + MAX_EXTRA_STAGES {
            return Err(DecompError::Family(format!(
                "pair ({lower},{upper}) never becomes coherent"
            )));
        }
    }
    Err(DecompError::TooFewStages {
        lower,
        upper,
        stage_count,
        needed,
    })
}

const MAX_EXTRA_STAGES: usize = 128;

/// Decompose a locally small family by single-atom exhaustions. Each member
/// `B` uses its atoms `b_0, b_1, ...` in canonical order as pieces, and
/// stage `n` takes pieces up to `f(n)`, one past the furthest piece any
/// smaller member reaches at stage `n`.
pub fn decompose_locally_small(
    fam: &FamilySpec,
    stage_count: usize,
    local_bound: Option<usize>,
) -> Result<Decomposition, DecompError> {
    if stage_count == 0 {
        return Err(DecompError::NoStages);
    }
    if let Some(bound) = local_bound {
        let r = locally_small_check(fam, bound);
        if !r.ok {
            return Err(DecompError::NotLocallySmall {
                bound,
                violations: r.violations,
            });
        }
    }
    check_coherent(fam, atom_mode(fam, stage_count)?, |n| atom_mode(fam, n))
}

/// Lifting mode: each member carries generator pieces (its stage list).
/// The down-set index family `{Γ(A)}` is decomposed in atom mode, and
/// `A^n` is the union of the first `n + 1` pieces of every `B ∈ Γ(A)^n`.
pub fn decompose_lifted(
    inst: &IdealInstance,
    fam: &FamilySpec,
    stage_count: usize,
) -> Result<Decomposition, DecompError> {
    if stage_count == 0 {
        return Err(DecompError::NoStages);
    }
    for (i, m) in fam.members.iter().enumerate() {
        if m.stages.iter().any(|&g| g >= inst.generators.len()) {
            return Err(DecompError::UnknownGenerator(i));
        }
    }
    check_coherent(fam, lifted(inst, fam, stage_count)?, |n| {
        lifted(inst, fam, n)
    })
}

fn lifted(
    inst: &IdealInstance,
    fam: &FamilySpec,
    stage_count: usize,
) -> Result<Decomposition, DecompError> {
    let gamma: Vec<AtomSet> = (0..fam.len())
        .map(|a| {
            (0..fam.len())
                .filter(|&b| fam.set(b).is_subset(fam.set(a)))
                .collect()
        })
        .collect();
    let index_dec = atom_mode(&FamilySpec::from_bare(&gamma), stage_count)?;
    let mut stages = Vec::with_capacity(fam.len());
    for a in 0..fam.len() {
        let mut st = Vec::with_capacity(stage_count);
        for n in 0..stage_count {
            if n + 1 == stage_count {
                st.push(fam.set(a));
                continue;
            }
            let mut acc = AtomSet::EMPTY;
            for b in index_dec.stage(a, n).iter() {
                for &g in fam.members[b].stages.iter().take(n + 1) {
                    acc |= inst.generators[g];
                }
            }
            st.push(acc);
        }
        stages.push(st);
    }
    Ok(Decomposition {
        stages,
        stage_count,
    })
}

/// Strictly increasing per-stage size bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeLadder {
    pub bounds: Vec<usize>,
}

/// Decompose under per-stage size bounds: `B^n` collects `A^n` for an
/// initial segment of the members below `B`, then tops up with `B`'s atoms
/// in canonical order, never exceeding `bounds[n]`.
pub fn decompose_bounded(
    fam: &FamilySpec,
    ladder: &SizeLadder,
) -> Result<Decomposition, DecompError> {
    let n_stages = ladder.bounds.len();
    if n_stages == 0 {
        return Err(DecompError::NoStages);
    }
    let top = *ladder.bounds.last().unwrap();
    for i in 0..fam.len() {
        if fam.set(i).len() > top {
            return Err(DecompError::LadderTooTight {
                member: i,
                size: fam.set(i).len(),
            });
        }
    }
    if ladder.bounds[0] == 0 || ladder.bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DecompError::BadLadder);
    }
    let mut stages: Vec<Vec<AtomSet>> = vec![Vec::new(); fam.len()];
    for b in by_rank(fam)? {
        let whole = fam.set(b);
        let below = fam.below(b);
        let mut st: Vec<AtomSet> = Vec::with_capacity(n_stages);
        let mut cur = AtomSet::EMPTY;
        for (n, &bound) in ladder.bounds.iter().enumerate() {
            for &a in &below {
                let next = cur | stages[a][n];
                if next.len() > bound {
                    break;
                }
                cur = next;
            }
            for atom in whole.iter() {
                if cur.len() >= bound {
                    break;
                }
                cur.insert(atom);
            }
            st.push(cur);
        }
        debug_assert_eq!(cur, whole);
        stages[b] = st;
    }
    let dec = Decomposition {
        stages,
        stage_count: n_stages,
    };
    match first_failure(fam, &dec) {
        None => Ok(dec),
        Some((lower, upper)) => Err(DecompError::TooFewStages {
            lower,
            upper,
            stage_count: n_stages,
            needed: n_stages + 1,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Coherence {
    /// Least `m` with `A^n ⊆ B^n` for all `n >= m`.
    Threshold { m: usize },
    /// Inclusion fails at the final stage; `element` is in `A^n \ B^n`.
    Failure { n: usize, element: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCoherence {
    pub lower: usize,
    pub upper: usize,
    pub outcome: Coherence,
}

/// Threshold or failure witness for every comparable pair `A ⊂ B`.
pub fn verify_coherence(fam: &FamilySpec, dec: &Decomposition) -> Vec<PairCoherence> {
    let n = dec.stage_count;
    let mut out = Vec::new();
    for a in 0..fam.len() {
        for b in fam.above(a) {
            let last = n - 1;
            let (sa, sb) = (dec.stages[a][last], dec.stages[b][last]);
            let outcome = if !sa.is_subset(sb) {
                Coherence::Failure {
                    n: last,
                    element: sa.minus(sb).first().unwrap(),
                }
            } else {
                let mut m = last;
                while m > 0 && dec.stages[a][m - 1].is_subset(dec.stages[b][m - 1]) {
                    m -= 1;
                }
                Coherence::Threshold { m }
            };
            out.push(PairCoherence {
                lower: a,
                upper: b,
                outcome,
            });
        }
    }
    out
}
