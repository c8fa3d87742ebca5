use crate::error::BlockError;
use crate::word::{format_bits, parse_bits, Bits};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Cut points `f(0) = 0 < f(1) < ... < f(K)` with a reference word of
/// length `f(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    cuts: Vec<usize>,
    word: Bits,
}

impl BlockSystem {
    pub fn new(cuts: Vec<usize>, word: Bits) -> Result<Self, BlockError> {
        if cuts.len() < 2 || cuts[0] != 0 || cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BlockError::BadCuts);
        }
        let want = *cuts.last().unwrap();
        if word.len() != want {
            return Err(BlockError::WordLength {
                got: word.len(),
                want,
            });
        }
        Ok(BlockSystem { cuts, word })
    }

    pub fn from_strs(cuts: &[usize], word: &str) -> Result<Self, BlockError> {
        BlockSystem::new(cuts.to_vec(), parse_bits(word)?)
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn word(&self) -> &[bool] {
        &self.word
    }

    /// Number of blocks K.
    pub fn blocks(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn horizon(&self) -> usize {
        self.cuts[self.blocks()]
    }

    /// Half-open position range of block `k`.
    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        self.cuts[k]..self.cuts[k + 1]
    }

    /// Whether `z` equals the reference word on block `k`.
    pub fn matches_block(&self, z: &[bool], k: usize) -> bool {
        let r = self.block(k);
        z[r.clone()] == self.word[r]
    }
}

#[derive(Serialize, Deserialize)]
struct Doc {
    cuts: Vec<usize>,
    word: String,
}

impl Serialize for BlockSystem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Doc {
            cuts: self.cuts.clone(),
            word: format_bits(&self.word),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlockSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = Doc::deserialize(d)?;
        let word = parse_bits(&doc.word).map_err(serde::de::Error::custom)?;
        BlockSystem::new(doc.cuts, word).map_err(serde::de::Error::custom)
    }
}

/// Whether `z` lies in stage `n`: it differs from the reference word on
/// every block `k` with `n <= k < K`. Stages at or beyond `K` contain every
/// word.
pub fn stage_membership(z: &[bool], sys: &BlockSystem, n: usize) -> Result<bool, BlockError> {
    if z.len() < sys.horizon() {
        return Err(BlockError::ShortInput {
            got: z.len(),
            horizon: sys.horizon(),
        });
    }
    Ok((n..sys.blocks()).all(|k| !sys.matches_block(z, k)))
}

/// `g(n) - f(n) >= gap` for every index `n` in `[from, min(K_f, K_g))`.
pub fn domination_check(
    f: &[usize],
    g: &[usize],
    gap: i64,
    from: usize,
) -> Result<bool, BlockError> {
    let end = f.len().min(g.len()).saturating_sub(1);
    if from >= end {
        return Err(BlockError::EmptyWindow);
    }
    Ok((from..end).all(|n| g[n] as i64 - f[n] as i64 >= gap))
}

/// Extension `t` of `s` that copies the reference word onto the first
/// block `m > n` starting strictly after `s`, so no completion of `s ++ t`
/// lies in stage `n`. Positions between `s` and that block are filled with 0.
pub fn nowhere_dense_extend(s: &[bool], sys: &BlockSystem, n: usize) -> Result<Bits, BlockError> {
    let m = (n + 1..sys.blocks())
        .find(|&m| sys.cuts[m] > s.len())
        .ok_or(BlockError::NoTargetBlock)?;
    let r = sys.block(m);
    let mut t = vec![false; r.start - s.len()];
    t.extend_from_slice(&sys.word[r]);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(cuts: &[usize], w: &str) -> BlockSystem {
        BlockSystem::from_strs(cuts, w).unwrap()
    }

    #[test]
    fn membership_examples() {
        let s = sys(&[0, 2, 4], "0000");
        assert!(stage_membership(&parse_bits("1111").unwrap(), &s, 0).unwrap());
        let z = parse_bits("0011").unwrap();
        assert!(!stage_membership(&z, &s, 0).unwrap());
        assert!(stage_membership(&z, &s, 1).unwrap());
        assert!(stage_membership(&parse_bits("001").unwrap(), &s, 0).is_err());
    }

    #[test]
    fn rejects_bad_systems() {
        assert_eq!(
            BlockSystem::from_strs(&[1, 2], "00"),
            Err(BlockError::BadCuts)
        );
        assert_eq!(
            BlockSystem::from_strs(&[0, 2, 2], "00"),
            Err(BlockError::BadCuts)
        );
        assert!(matches!(
            BlockSystem::from_strs(&[0, 3], "00"),
            Err(BlockError::WordLength { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let s = sys(&[0, 1, 3], "010");
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"cuts":[0,1,3],"word":"010"}"#);
        assert_eq!(serde_json::from_str::<BlockSystem>(&j).unwrap(), s);
        assert!(serde_json::from_str::<BlockSystem>(r#"{"cuts":[0,2],"word":"0"}"#).is_err());
    }

    #[test]
    fn domination_examples() {
        let f: Vec<usize> = (0..8).map(|n| 2 * n).collect();
        let g: Vec<usize> = (0..8).map(|n| 4 * n).collect();
        assert!(domination_check(&f, &g, 4, 2).unwrap());
        assert!(!domination_check(&f, &f, 1, 0).unwrap());
        assert_eq!(domination_check(&f, &g, 1, 7), Err(BlockError::EmptyWindow));
    }

    #[test]
    fn extension_kills_every_completion() {
        let s = sys(&[0, 2, 3, 6], "011010");
        let t = nowhere_dense_extend(&[], &s, 0).unwrap();
        assert_eq!(t.len(), 3);
        let tail = 6 - t.len();
        for v in 0u32..(1 << tail) {
            let mut z = t.clone();
            z.extend((0..tail).map(|i| v >> i & 1 == 1));
            assert!(!stage_membership(&z, &s, 0).unwrap());
        }
        // starting from a prefix of the reference word
        let t2 = nowhere_dense_extend(&parse_bits("01").unwrap(), &s, 0).unwrap();
        assert_eq!(format_bits(&t2), "0010");
        assert_eq!(
            nowhere_dense_extend(&parse_bits("0110").unwrap(), &s, 0),
            Err(BlockError::NoTargetBlock)
        );
    }
}
