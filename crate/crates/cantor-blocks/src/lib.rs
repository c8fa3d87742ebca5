//! Block systems over finite binary words.
//!
//! A system is a cut list `0 = f(0) < ... < f(K)` plus a word `x` of length
//! `f(K)`. Stage `n` is the set of words that differ from `x` on every block
//! `k >= n`. Everything here works at the finite horizon `H = f(K)`.

mod cover;
mod error;
pub mod gen;
mod oracle;
mod order;
mod system;
mod word;

pub use cover::{cover_build, CoverResult, TrieChain, DEFAULT_MAX_WORD_LEN};
pub use error::BlockError;
pub use oracle::{
    automaton_inclusion, brute_inclusion, enumerate_inclusion, BRUTE_LIMIT, ENUMERATION_LIMIT,
};
pub use order::{
    coherence_threshold, separating_witness, stage_inclusion, subset_decide,
    subset_decide_with_slack, Verdict, Witness, WitnessCase, DEFAULT_SLACK,
};
pub use system::{domination_check, nowhere_dense_extend, stage_membership, BlockSystem};
pub use word::{format_bits, length_lex_words, parse_bits, Bits};
