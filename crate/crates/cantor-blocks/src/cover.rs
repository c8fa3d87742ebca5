//! Covering an increasing chain of finite tries by one block system.

use crate::error::BlockError;
use crate::system::BlockSystem;
use crate::word::{format_bits, length_lex_words, parse_bits, Bits};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Longest block word tried before giving up on a trie.
pub const DEFAULT_MAX_WORD_LEN: usize = 8;

/// Increasing chain of closed sets, each given by finitely many branches of
/// length `horizon`. A trie is the prefix closure of its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrieChain {
    pub horizon: usize,
    pub tries: Vec<Vec<Bits>>,
}

#[derive(Serialize, Deserialize)]
struct ChainDoc {
    horizon: usize,
    tries: Vec<Vec<String>>,
}

impl Serialize for TrieChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChainDoc {
            horizon: self.horizon,
            tries: self
                .tries
                .iter()
                .map(|t| t.iter().map(|b| format_bits(b)).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrieChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = ChainDoc::deserialize(d)?;
        let tries = doc
            .tries
            .iter()
            .map(|t| {
                t.iter()
                    .map(|b| parse_bits(b))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(TrieChain {
            horizon: doc.horizon,
            tries,
        })
    }
}

impl TrieChain {
    /// Check lengths, monotonicity, and that no node has a full subtree.
    pub fn validate(&self) -> Result<(), BlockError> {
        if self.tries.is_empty() {
            return Err(BlockError::BadChain("empty chain".into()));
        }
        for (i, t) in self.tries.iter().enumerate() {
            if let Some(b) = t.iter().find(|b| b.len() != self.horizon) {
                return Err(BlockError::BadChain(format!(
                    "trie {} has a branch of length {}",
                    i + 1,
                    b.len()
                )));
            }
            if i + 1 < self.tries.len() {
                if let Some(b) = t.iter().find(|b| !self.tries[i + 1].contains(b)) {
                    return Err(BlockError::BadChain(format!(
                        "branch {} of trie {} missing from trie {}",
                        format_bits(b),
                        i + 1,
                        i + 2
                    )));
                }
            }
            let mut through: HashMap<&[bool], usize> = HashMap::new();
            let mut distinct: Vec<&Bits> = t.iter().collect();
            distinct.sort();
            distinct.dedup();
            for b in distinct {
                for d in 0..self.horizon {
                    *through.entry(&b[..d]).or_default() += 1;
                }
            }
            for (node, count) in through {
                let free = self.horizon - node.len();
                if free < 64 && count as u64 >= 1u64 << free {
                    return Err(BlockError::BadChain(format!(
                        "trie {} is full below node {:?}",
                        i + 1,
                        format_bits(node)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Trie used when choosing block `j + 1` (1-based, capped at the top).
    fn trie_for(&self, j: usize) -> &[Bits] {
        &self.tries[j.max(1).min(self.tries.len()) - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub system: BlockSystem,
    /// Block words `s_1, s_2, ...` as bit strings.
    pub block_words: Vec<String>,
    /// Whether construction stopped because the next block would overrun
    /// the horizon.
    pub truncated: bool,
}

/// Whether `w` occurs at some offset `0..=max_offset` of some branch.
fn occurs(branches: &[Bits], w: &[bool], max_offset: usize) -> bool {
    branches
        .iter()
        .any(|b| (0..=max_offset).any(|l| l + w.len() <= b.len() && b[l..l + w.len()] == *w))
}

/// Greedy cover: block `j + 1` is the length-lex first nonempty word that no
/// branch of the relevant trie carries at any offset up to `f(j)`.
pub fn cover_build(chain: &TrieChain, max_word_len: usize) -> Result<CoverResult, BlockError> {
    chain.validate()?;
    let h = chain.horizon;
    let mut cuts = vec![0usize];
    let mut words: Vec<Bits> = Vec::new();
    let mut truncated = false;
    'blocks: while *cuts.last().unwrap() < h {
        let j = words.len();
        let fj = *cuts.last().unwrap();
        let trie = chain.trie_for(j);
        for len in 1..=max_word_len {
            if fj + len > h {
                truncated = true;
                break 'blocks;
            }
            if let Some(w) = length_lex_words(len).find(|w| !occurs(trie, w, fj)) {
                cuts.push(fj + len);
                words.push(w);
                continue 'blocks;
            }
        }
        return Err(BlockError::Dense(j.max(1).min(chain.tries.len())));
    }
    if words.is_empty() {
        return Err(BlockError::Dense(1));
    }
    let horizon = *cuts.last().unwrap();
    let word: Bits = words.concat();
    // the system lives on the prefix actually covered
    debug_assert_eq!(word.len(), horizon);
    Ok(CoverResult {
        system: BlockSystem::new(cuts, word)?,
        block_words: words.iter().map(|w| format_bits(w)).collect(),
        truncated,
    })
}
