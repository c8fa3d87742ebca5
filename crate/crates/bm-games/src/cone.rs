//! Binary cone spaces truncated at a fixed depth.
//!
//! Points are the words of length `depth`. An open is a finite union of
//! cones `[s]`, kept as the antichain of its maximal cones, so equality of
//! opens is equality of root lists and `[u]` lies in an open exactly when
//! `u` extends one of its roots.

use crate::error::BmError;
use crate::play::{BmTactic, OneMenu};
use crate::reduce::RefinementScheme;
use crate::space::BmSpace;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// Longest word a cone root may have.
pub const MAX_CONE_DEPTH: usize = 63;

/// A binary word; the first letter is the most significant bit of `bits`.
/// Ordering is length first, then lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ConeWord {
    len: u8,
    bits: u64,
}

impl ConeWord {
    pub const EMPTY: ConeWord = ConeWord { len: 0, bits: 0 };

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn push(self, bit: bool) -> ConeWord {
        assert!(self.len() < MAX_CONE_DEPTH, "cone word too long");
        ConeWord {
            len: self.len + 1,
            bits: self.bits << 1 | bit as u64,
        }
    }

    pub fn extend(self, bits: &[bool]) -> ConeWord {
        bits.iter().fold(self, |w, &b| w.push(b))
    }

    pub fn is_prefix_of(self, other: ConeWord) -> bool {
        self.len <= other.len && other.bits >> (other.len - self.len) == self.bits
    }

    fn parent(self) -> Option<ConeWord> {
        (self.len > 0).then(|| ConeWord {
            len: self.len - 1,
            bits: self.bits >> 1,
        })
    }

    pub fn letter(self, i: usize) -> bool {
        self.bits >> (self.len() - 1 - i) & 1 == 1
    }

    pub fn parse(s: &str) -> Result<ConeWord, String> {
        if s.len() > MAX_CONE_DEPTH {
            return Err(format!(
                "word of length {} exceeds {MAX_CONE_DEPTH}",
                s.len()
            ));
        }
        s.chars().try_fold(ConeWord::EMPTY, |w, c| match c {
            '0' => Ok(w.push(false)),
            '1' => Ok(w.push(true)),
            _ => Err(format!("bad letter {c:?} in {s:?}")),
        })
    }
}

impl fmt::Display for ConeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.letter(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ConeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Open set as the sorted antichain of its maximal cones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ConeOpen {
    roots: Vec<ConeWord>,
}

impl ConeOpen {
    pub fn empty() -> Self {
        ConeOpen::default()
    }

    pub fn cone(w: ConeWord) -> Self {
        ConeOpen { roots: vec![w] }
    }

    /// Canonical form of the union of the given cones.
    pub fn from_roots(words: impl IntoIterator<Item = ConeWord>) -> Self {
        let mut set: BTreeSet<ConeWord> = words.into_iter().collect();
        // merging siblings bottom-up makes every cone maximal
        loop {
            let merge = set.iter().rev().find_map(|&w| {
                let parent = w.parent()?;
                set.contains(&ConeWord {
                    len: w.len,
                    bits: w.bits ^ 1,
                })
                .then_some(parent)
            });
            match merge {
                Some(p) => {
                    set.retain(|w| !p.is_prefix_of(*w));
                    set.insert(p);
                }
                None => break,
            }
        }
        let all: Vec<ConeWord> = set.iter().copied().collect();
        let roots = all
            .iter()
            .copied()
            .filter(|&w| !all.iter().any(|&v| v != w && v.is_prefix_of(w)))
            .collect();
        ConeOpen { roots }
    }

    pub fn roots(&self) -> &[ConeWord] {
        &self.roots
    }

    /// First root in length-lex order.
    pub fn first_root(&self) -> Option<ConeWord> {
        self.roots.first().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains_cone(&self, w: ConeWord) -> bool {
        self.roots.iter().any(|r| r.is_prefix_of(w))
    }

    pub fn is_subset(&self, other: &ConeOpen) -> bool {
        self.roots.iter().all(|&w| other.contains_cone(w))
    }

    pub fn meet(&self, other: &ConeOpen) -> ConeOpen {
        let mut out = Vec::new();
        for &a in &self.roots {
            for &b in &other.roots {
                if a.is_prefix_of(b) {
                    out.push(b);
                } else if b.is_prefix_of(a) {
                    out.push(a);
                }
            }
        }
        ConeOpen::from_roots(out)
    }

    pub fn is_disjoint(&self, other: &ConeOpen) -> bool {
        self.meet(other).is_empty()
    }

    pub fn parse(words: &[&str]) -> Result<ConeOpen, String> {
        Ok(ConeOpen::from_roots(
            words
                .iter()
                .map(|s| ConeWord::parse(s))
                .collect::<Result<Vec<_>, _>>()?,
        ))
    }
}

impl fmt::Debug for ConeOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.roots).finish()
    }
}

impl Serialize for ConeOpen {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.roots.iter().map(|w| w.to_string()))
    }
}

impl<'de> Deserialize<'de> for ConeOpen {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let words: Vec<String> = Vec::deserialize(d)?;
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        ConeOpen::parse(&refs).map_err(serde::de::Error::custom)
    }
}

/// Cantor space cut off at `depth`: every cone root has length at most `depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpace {
    pub depth: usize,
}

impl ConeSpace {
    pub fn new(depth: usize) -> Result<Self, BmError> {
        if depth == 0 || depth > MAX_CONE_DEPTH {
            return Err(BmError::NotASpace(format!(
                "cone depth {depth} outside 1..={MAX_CONE_DEPTH}"
            )));
        }
        Ok(ConeSpace { depth })
    }
}

impl BmSpace for ConeSpace {
    type Open = ConeOpen;

    fn whole(&self) -> ConeOpen {
        ConeOpen::cone(ConeWord::EMPTY)
    }
    fn is_open(&self, u: &ConeOpen) -> bool {
        u.roots.iter().all(|w| w.len() <= self.depth)
            && *u == ConeOpen::from_roots(u.roots.iter().copied())
    }
    fn meet(&self, a: &ConeOpen, b: &ConeOpen) -> ConeOpen {
        a.meet(b)
    }
    fn is_empty(&self, u: &ConeOpen) -> bool {
        u.is_empty()
    }
    fn subset(&self, a: &ConeOpen, b: &ConeOpen) -> bool {
        a.is_subset(b)
    }
    fn max_depth(&self) -> Option<usize> {
        Some(self.depth)
    }
}

/// ONE plays the current open itself or a cone reached from one of its
/// roots by 1 to `extra` more letters.
#[derive(Clone, Copy, Debug)]
pub struct ConeMenu {
    pub extra: usize,
}

impl OneMenu<ConeSpace> for ConeMenu {
    fn moves(&self, space: &ConeSpace, within: &ConeOpen) -> Vec<ConeOpen> {
        let mut out = vec![within.clone()];
        for &r in within.roots() {
            let mut layer = vec![r];
            for _ in 0..self.extra {
                if layer[0].len() >= space.depth {
                    break;
                }
                layer = layer
                    .iter()
                    .flat_map(|w| [w.push(false), w.push(true)])
                    .collect();
                out.extend(layer.iter().map(|&w| ConeOpen::cone(w)));
            }
        }
        out.dedup();
        out
    }
}

/// `J_m([s]) = [s 0^(m-1) 1]`, applied to the first root of a union.
#[derive(Clone, Copy, Debug)]
pub struct ConeSplitting {
    pub space: ConeSpace,
}

impl RefinementScheme for ConeSplitting {
    type Space = ConeSpace;

    fn space(&self) -> &ConeSpace {
        &self.space
    }

    fn split(&self, u: &ConeOpen, m: usize) -> Option<ConeOpen> {
        let s = u.first_root()?;
        if m == 0 || s.len() + m > self.space.depth {
            return None;
        }
        let mut w = s;
        for _ in 1..m {
            w = w.push(false);
        }
        Some(ConeOpen::cone(w.push(true)))
    }

    fn index_bound(&self) -> usize {
        self.space.depth
    }
}

/// Markov tactic that answers the child cone of the newest set's first
/// root selected by the parity of the inning.
#[derive(Clone, Copy, Debug)]
pub struct ChildByInning {
    pub k: usize,
    pub space: ConeSpace,
}

impl BmTactic<ConeOpen> for ChildByInning {
    fn window(&self) -> usize {
        self.k
    }
    fn is_markov(&self) -> bool {
        true
    }
    fn respond(&self, window: &[ConeOpen], inning: usize) -> Result<ConeOpen, BmError> {
        let last = window
            .last()
            .ok_or_else(|| BmError::Contract("empty window".into()))?;
        let r = last
            .first_root()
            .ok_or_else(|| BmError::Contract("empty open in window".into()))?;
        if r.len() >= self.space.depth {
            return Err(BmError::Horizon(format!("{r} is a leaf")));
        }
        Ok(ConeOpen::cone(r.push(inning % 2 == 1)))
    }
    fn label(&self) -> String {
        format!("child-by-inning-{}", self.k)
    }
}
