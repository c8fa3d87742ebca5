//! Inclusion between block systems.
//!
//! Write `a = (x, f)` and `b = (y, g)`. The working notion is the block
//! condition: b-block `j` is *covered* from a-stage `n` when some a-block
//! `k >= n` lies inside b-block `j` and `x = y` on it. Stage `n` of `a` is
//! inside stage `m` of `b` exactly when every b-block `j >= m` is covered
//! from `n`.

use crate::error::BlockError;
use crate::system::BlockSystem;
use crate::word::Bits;
use serde::{Deserialize, Serialize};

/// Minimum number of blocks a tail window must span before a verdict is
/// issued.
pub const DEFAULT_SLACK: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "value", rename_all = "snake_case")]
pub enum Verdict {
    /// Least g-block index from which every block is covered.
    ProperSubsetFrom(usize),
    Equal,
    /// Every uncovered g-block.
    NotSubset(Vec<usize>),
    /// Every block is covered, but the window is shorter than the slack.
    Inconclusive,
}

fn same_horizon(a: &BlockSystem, b: &BlockSystem) -> Result<(), BlockError> {
    if a.horizon() != b.horizon() {
        return Err(BlockError::HorizonMismatch(a.horizon(), b.horizon()));
    }
    Ok(())
}

/// Whether b-block `j` contains an a-block `k >= from` on which the words agree.
fn covered(a: &BlockSystem, b: &BlockSystem, j: usize, from: usize) -> bool {
    let outer = b.block(j);
    (from..a.blocks()).any(|k| {
        let r = a.block(k);
        outer.start <= r.start && r.end <= outer.end && a.word()[r.clone()] == b.word()[r]
    })
}

/// Exact inclusion of a-stage `n` in b-stage `m` at the shared horizon.
pub fn stage_inclusion(
    a: &BlockSystem,
    n: usize,
    b: &BlockSystem,
    m: usize,
) -> Result<bool, BlockError> {
    same_horizon(a, b)?;
    Ok((m..b.blocks()).all(|j| covered(a, b, j, n)))
}

/// Tail start of a block-shift alignment `long.cuts[i + shift] == short.cuts[i]`
/// with agreeing words, if the aligned tail is long enough to certify.
fn aligned_tail(short: &BlockSystem, long: &BlockSystem, shift: usize, slack: usize) -> bool {
    let ks = short.blocks();
    if long.blocks() != ks + shift {
        return false;
    }
    let mut start = ks;
    while start > 0 {
        let i = start - 1;
        let r = short.block(i);
        if long.cuts()[i + shift] != short.cuts()[i] || short.word()[r.clone()] != long.word()[r] {
            break;
        }
        start = i;
    }
    let tail = ks - start;
    tail >= slack.min(ks)
}

fn shift_equal(a: &BlockSystem, b: &BlockSystem, slack: usize) -> bool {
    (0..=b.blocks() / 2).any(|s| aligned_tail(a, b, s, slack))
        || (1..=a.blocks() / 2).any(|s| aligned_tail(b, a, s, slack))
}

pub fn subset_decide(a: &BlockSystem, b: &BlockSystem) -> Result<Verdict, BlockError> {
    subset_decide_with_slack(a, b, DEFAULT_SLACK)
}

/// Decide how `a` sits inside `b` on the finite tail.
pub fn subset_decide_with_slack(
    a: &BlockSystem,
    b: &BlockSystem,
    slack: usize,
) -> Result<Verdict, BlockError> {
    same_horizon(a, b)?;
    if shift_equal(a, b, slack) {
        return Ok(Verdict::Equal);
    }
    let bad: Vec<usize> = (0..b.blocks()).filter(|&j| !covered(a, b, j, j)).collect();
    let from = bad.last().map_or(0, |&j| j + 1);
    if b.blocks() >= from + slack {
        Ok(Verdict::ProperSubsetFrom(from))
    } else if bad.is_empty() {
        Ok(Verdict::Inconclusive)
    } else {
        Ok(Verdict::NotSubset(bad))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// Some a-block from the stage on lies inside the failing g-block.
    Case1,
    /// No a-block fits inside, but an a-cut falls within it.
    Case2A,
    /// The failing g-block sits strictly inside one a-block.
    Case2B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "bits_str")]
    pub z: Bits,
    /// Stage at which `z` separates: in a-stage, outside b-stage.
    pub stage: usize,
    /// g-blocks on which `z` copies `y`.
    pub copied_blocks: Vec<usize>,
    pub case: WitnessCase,
}

mod bits_str {
    use crate::word::{format_bits, parse_bits};
    use serde::{Deserialize, Deserializer, Serializer};
    pub fn serialize<S: Serializer>(b: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_bits(b))
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        parse_bits(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A word in a-stage `n0` but outside b-stage `n0`, where `n0` is the last
/// uncovered g-block. `z` copies `y` on g-block `n0` and flips `x` elsewhere.
pub fn separating_witness(a: &BlockSystem, b: &BlockSystem) -> Result<Witness, BlockError> {
    let bad = match subset_decide(a, b)? {
        Verdict::NotSubset(bad) => bad,
        v => {
            return Err(BlockError::Contract(format!(
                "witness requested but verdict is {v:?}"
            )))
        }
    };
    let n0 = *bad.last().expect("NotSubset carries a block");
    let outer = b.block(n0);
    let mut z: Bits = a.word().iter().map(|&v| !v).collect();
    z[outer.clone()].copy_from_slice(&b.word()[outer.clone()]);

    let inside = (n0..a.blocks()).any(|k| {
        let r = a.block(k);
        outer.start <= r.start && r.end <= outer.end
    });
    let cut_inside = a.cuts().iter().any(|&c| outer.start <= c && c < outer.end);
    let case = if inside {
        WitnessCase::Case1
    } else if cut_inside {
        WitnessCase::Case2A
    } else {
        WitnessCase::Case2B
    };
    Ok(Witness {
        z,
        stage: n0,
        copied_blocks: vec![n0],
        case,
    })
}

/// Least `m` with a-stage `n` inside b-stage `n` for every `n >= m`.
pub fn coherence_threshold(a: &BlockSystem, b: &BlockSystem) -> Result<usize, BlockError> {
    match subset_decide(a, b)? {
        Verdict::ProperSubsetFrom(_) => {}
        v => {
            return Err(BlockError::Contract(format!(
                "threshold needs a proper subset, got {v:?}"
            )))
        }
    }
    let top = a.blocks().max(b.blocks());
    let mut m = top;
    while m > 0 && stage_inclusion(a, m - 1, b, m - 1)? {
        m -= 1;
    }
    Ok(m)
}
