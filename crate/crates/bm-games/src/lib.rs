//! Banach-Mazur game on finite spaces and on truncated cone spaces.
//!
//! Finite spaces decompose into finitely many pairwise-meeting families,
//! which yields a 1-tactic. Cone spaces carry a disjoint splitting scheme
//! that turns a Markov k-tactic into a plain one.
//!
//! On finite spaces every legal descending play ends in a nonempty set, so
//! a verdict there mostly certifies legality. The checks with teeth are the
//! structural ones: the decomposition invariants and the embedding
//! identity of the reduction, which is asserted per transcript.

mod cone;
mod error;
mod fip;
mod play;
mod reduce;
mod space;

pub use cone::{ChildByInning, ConeMenu, ConeOpen, ConeSpace, ConeSplitting, ConeWord};
pub use error::BmError;
pub use fip::{fip_decompose, fip_one_tactic, FipDecomposition, FipTactic};
pub use play::{
    bm_play, bm_verify, BmEnd, BmInning, BmReport, BmStats, BmTactic, BmTranscript, BmVerdict,
    BmVerifyConfig, OneMenu, OneStrategy, PlayResult, Scripted, SeededOne, DEFAULT_BM_BUDGET,
};
pub use reduce::{
    embedding_violations, markov_to_plain, validate_scheme, ReducedTactic, RefinementScheme,
};
pub use space::{all_finite_spaces, BmSpace, FiniteSpace, FullMenu};
