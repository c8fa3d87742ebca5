//! Inclusion oracles that never look at the block condition.
//!
//! `enumerate_inclusion` walks every word of length H. `automaton_inclusion`
//! scans positions left to right, tracking whether the current a-block and
//! b-block still copy their reference words and whether some b-block from
//! stage `m` on has been copied in full. Both answer the same question:
//! is a-stage `n` inside b-stage `m`?

use crate::error::BlockError;
use crate::system::BlockSystem;

/// Largest horizon walked word by word.
pub const ENUMERATION_LIMIT: usize = 20;
/// Largest horizon the oracle accepts at all.
pub const BRUTE_LIMIT: usize = 26;

fn check(a: &BlockSystem, b: &BlockSystem, limit: usize) -> Result<usize, BlockError> {
    if a.horizon() != b.horizon() {
        return Err(BlockError::HorizonMismatch(a.horizon(), b.horizon()));
    }
    let h = a.horizon();
    if h > limit {
        return Err(BlockError::HorizonTooLarge { horizon: h, limit });
    }
    Ok(h)
}

/// Per-block (mask, reference bits) for blocks from `from` on; bit `i` of a
/// word is position `i`.
fn block_masks(sys: &BlockSystem, from: usize) -> Vec<(u32, u32)> {
    (from..sys.blocks())
        .map(|k| {
            let r = sys.block(k);
            let mut mask = 0u32;
            let mut bits = 0u32;
            for p in r {
                mask |= 1 << p;
                if sys.word()[p] {
                    bits |= 1 << p;
                }
            }
            (mask, bits)
        })
        .collect()
}

pub fn enumerate_inclusion(
    a: &BlockSystem,
    b: &BlockSystem,
    n: usize,
    m: usize,
) -> Result<bool, BlockError> {
    let h = check(a, b, ENUMERATION_LIMIT)?;
    let am = block_masks(a, n);
    let bm = block_masks(b, m);
    for z in 0u32..(1u32 << h) {
        let in_a = am.iter().all(|&(mask, bits)| z & mask != bits);
        if in_a && bm.iter().any(|&(mask, bits)| z & mask == bits) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn automaton_inclusion(
    a: &BlockSystem,
    b: &BlockSystem,
    n: usize,
    m: usize,
) -> Result<bool, BlockError> {
    let h = check(a, b, BRUTE_LIMIT)?;
    // block index owning each position, and whether it ends there
    let owner = |sys: &BlockSystem| {
        let mut own = vec![0usize; h];
        for k in 0..sys.blocks() {
            for p in sys.block(k) {
                own[p] = k;
            }
        }
        own
    };
    let (oa, ob) = (owner(a), owner(b));
    // state bits: 1 = a-block copying so far, 2 = b-block copying so far,
    // 4 = some b-block from stage m copied in full
    let mut reach = [false; 8];
    reach[0b011] = true;
    for p in 0..h {
        let mut next = [false; 8];
        for (st, &on) in reach.iter().enumerate() {
            if !on {
                continue;
            }
            for v in [false, true] {
                let mut a_eq = st & 1 != 0 && v == a.word()[p];
                let mut b_eq = st & 2 != 0 && v == b.word()[p];
                let mut hit = st & 4 != 0;
                if a.cuts()[oa[p] + 1] == p + 1 {
                    if a_eq && oa[p] >= n {
                        continue; // word copied an a-block: not in a-stage n
                    }
                    a_eq = true;
                }
                if b.cuts()[ob[p] + 1] == p + 1 {
                    if b_eq && ob[p] >= m {
                        hit = true;
                    }
                    b_eq = true;
                }
                next[a_eq as usize | (b_eq as usize) << 1 | (hit as usize) << 2] = true;
            }
        }
        reach = next;
    }
    Ok(!reach[4..].iter().any(|&r| r))
}

/// Exhaustive inclusion check of a-stage `n` in b-stage `m`, refusing
/// horizons above [`BRUTE_LIMIT`].
pub fn brute_inclusion(
    a: &BlockSystem,
    b: &BlockSystem,
    n: usize,
    m: usize,
) -> Result<bool, BlockError> {
    let h = check(a, b, BRUTE_LIMIT)?;
    if h <= 16 {
        enumerate_inclusion(a, b, n, m)
    } else {
        automaton_inclusion(a, b, n, m)
    }
}
