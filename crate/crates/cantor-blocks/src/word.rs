use crate::error::BlockError;

pub type Bits = Vec<bool>;

pub fn parse_bits(s: &str) -> Result<Bits, BlockError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(BlockError::BadBits(s.to_string())),
        })
        .collect()
}

pub fn format_bits(b: &[bool]) -> String {
    b.iter().map(|&v| if v { '1' } else { '0' }).collect()
}

/// All words of length `len` in lexicographic order (0 < 1).
pub fn length_lex_words(len: usize) -> impl Iterator<Item = Bits> {
    assert!(len < 64);
    (0u64..(1u64 << len)).map(move |v| (0..len).map(|i| v >> (len - 1 - i) & 1 == 1).collect())
}
