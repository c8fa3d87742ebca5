use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("cuts must start at 0 and strictly increase")]
    BadCuts,
    #[error("word has length {got}, expected {want}")]
    WordLength { got: usize, want: usize },
    #[error("input word has length {got}, shorter than horizon {horizon}")]
    ShortInput { got: usize, horizon: usize },
    #[error("horizons differ: {0} vs {1}")]
    HorizonMismatch(usize, usize),
    #[error("horizon {horizon} exceeds the oracle limit {limit}")]
    HorizonTooLarge { horizon: usize, limit: usize },
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("empty comparison window")]
    EmptyWindow,
    #[error("no block after the prefix fits within the horizon")]
    NoTargetBlock,
    #[error("trie {0} admits no avoiding word within the length budget")]
    Dense(usize),
    #[error("invalid trie chain: {0}")]
    BadChain(String),
    #[error("invalid bit string {0:?}")]
    BadBits(String),
}
