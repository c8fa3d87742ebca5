//! Covering games on finite ideals.
//!
//! ONE plays sets from a finite menu, TWO answers with a bounded-memory
//! tactic, and a play of `depth` innings is scored by the finite win rule:
//! every ONE move older than `lag` innings must be covered by the union of
//! TWO's moves.

mod play;
mod rules;
mod tactic;
mod verify;

pub use play::{
    chain_heights, purity_check, recheck, run_play, Inning, MenuOrder, OneStrategy, PlayConfig,
    PlayEnd, PlayVerdict, Player, Scripted, SeededRandom, Transcript,
};
pub use rules::{finite_win, Arena, GameKind, Legality, Outcome, TwoMove};
pub use tactic::{window_of, CopyTactic, EmptyTactic, FnTactic, Tactic, TacticError};
pub use verify::{
    check_menu, verify_tactic, LeafStats, Verdict, VerifyConfig, VerifyError, VerifyReport,
    DEFAULT_NODE_BUDGET,
};
