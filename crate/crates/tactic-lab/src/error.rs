use coherent_decomp::DecompError;
use ideal_core::AtomSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("coloring admits a bounded path {path:?} with colors {colors:?}")]
    ColoringAdmitsPath { path: Vec<usize>, colors: Vec<u64> },
    #[error("path search failed: {0}")]
    PathSearch(String),
    #[error("window {0:?} has no color")]
    MissingColor(Vec<usize>),
    #[error("window {window:?} needs stage {needed} but only {stage_count} stages exist")]
    StageBudget {
        window: Vec<usize>,
        needed: usize,
        stage_count: usize,
    },
    #[error("atom {0} lies in no member")]
    NoEnumeration(usize),
    #[error("invariant ({which}) fails at {witness:?}")]
    PhiInvariant { which: char, witness: Vec<AtomSet> },
    #[error("menu entry {0} lies below no chain member")]
    NotCofinal(usize),
    #[error("chain is not absorbing at window {0:?}")]
    NotAbsorbing(Vec<usize>),
    #[error("base tactic must be a plain {0}-tactic")]
    BadBase(usize),
    #[error("bad inputs: {0}")]
    Inputs(String),
}
