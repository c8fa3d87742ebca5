//! Seeded random systems and trie chains for experiments and acceptance runs.

use crate::cover::TrieChain;
use crate::system::BlockSystem;
use crate::word::Bits;
use rand::seq::index::sample;
use rand::Rng;

/// Random cut list with `k` blocks on horizon `h`.
pub fn random_cuts<R: Rng>(rng: &mut R, h: usize, k: usize) -> Vec<usize> {
    assert!(1 <= k && k <= h);
    let mut inner: Vec<usize> = sample(rng, h - 1, k - 1)
        .into_iter()
        .map(|i| i + 1)
        .collect();
    inner.sort_unstable();
    let mut cuts = vec![0];
    cuts.extend(inner);
    cuts.push(h);
    cuts
}

pub fn random_word<R: Rng>(rng: &mut R, h: usize) -> Bits {
    (0..h).map(|_| rng.gen()).collect()
}

pub fn random_system<R: Rng>(rng: &mut R, h: usize, k: usize) -> BlockSystem {
    let cuts = random_cuts(rng, h, k);
    BlockSystem::new(cuts, random_word(rng, h)).expect("valid by construction")
}

/// A pair `(a, b)` on a shared horizon at most `max_h`, each with between
/// `min_k` and `max_k` blocks. About half the pairs coarsen `a` into `b` and
/// copy most of its word, so proper inclusions are common.
pub fn random_pair<R: Rng>(
    rng: &mut R,
    max_h: usize,
    min_k: usize,
    max_k: usize,
) -> (BlockSystem, BlockSystem) {
    let mode = rng.gen_range(0..10);
    if mode < 5 && max_k > min_k {
        let ka = rng.gen_range(min_k + 1..=max_k);
        let h = rng.gen_range(ka.max(2 * min_k)..=max_h);
        let a = random_system(rng, h, ka);
        let kb = rng.gen_range(min_k..ka);
        let mut keep: Vec<usize> = sample(rng, ka - 1, kb - 1)
            .into_iter()
            .map(|i| a.cuts()[i + 1])
            .collect();
        keep.sort_unstable();
        let mut cuts = vec![0];
        cuts.extend(keep);
        cuts.push(h);
        let mut y = a.word().to_vec();
        let flips = rng.gen_range(0..=3);
        for _ in 0..flips {
            let p = rng.gen_range(0..h);
            y[p] = !y[p];
        }
        (a, BlockSystem::new(cuts, y).expect("coarsening is valid"))
    } else if mode < 7 {
        let ka = rng.gen_range(min_k..=max_k);
        let h = rng.gen_range(max_k..=max_h);
        let a = random_system(rng, h, ka);
        let mut y = a.word().to_vec();
        let p = rng.gen_range(0..h);
        y[p] = !y[p];
        let b = BlockSystem::new(
            a.cuts().to_vec(),
            if rng.gen_bool(0.5) {
                y
            } else {
                a.word().to_vec()
            },
        )
        .expect("same cuts");
        (a, b)
    } else {
        let h = rng.gen_range(max_k..=max_h);
        let ka = rng.gen_range(min_k..=max_k);
        let kb = rng.gen_range(min_k..=max_k);
        (random_system(rng, h, ka), random_system(rng, h, kb))
    }
}

/// Increasing chain of `m` tries on `horizon`, each adding a few random
/// branches to the previous one.
pub fn random_trie_chain<R: Rng>(rng: &mut R, m: usize, horizon: usize) -> TrieChain {
    let mut tries: Vec<Vec<Bits>> = Vec::new();
    let mut current: Vec<Bits> = Vec::new();
    for _ in 0..m {
        for _ in 0..rng.gen_range(1..=4) {
            let b = random_word(rng, horizon);
            if !current.contains(&b) {
                current.push(b);
            }
        }
        tries.push(current.clone());
    }
    TrieChain { horizon, tries }
}
