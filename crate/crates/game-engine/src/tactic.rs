//! TWO's bounded-memory strategies.

use crate::rules::TwoMove;
use ideal_core::AtomSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TacticError {
    /// The tactic needs a member above everything available.
    #[error("ceiling: {0}")]
    Ceiling(String),
    /// The window violates the tactic's own preconditions.
    #[error("contract: {0}")]
    Contract(String),
}

/// A k-tactic sees the last `window()` ONE moves, oldest first. A Markov
/// tactic also sees the 1-based inning number.
pub trait Tactic: Send + Sync {
    fn window(&self) -> usize;

    fn is_markov(&self) -> bool {
        false
    }

    fn respond(&self, window: &[AtomSet], inning: usize) -> Result<TwoMove, TacticError>;

    fn label(&self) -> String;
}

impl<T: Tactic + ?Sized> Tactic for Arc<T> {
    fn window(&self) -> usize {
        (**self).window()
    }
    fn is_markov(&self) -> bool {
        (**self).is_markov()
    }
    fn respond(&self, window: &[AtomSet], inning: usize) -> Result<TwoMove, TacticError> {
        (**self).respond(window, inning)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

impl<T: Tactic + ?Sized> Tactic for Box<T> {
    fn window(&self) -> usize {
        (**self).window()
    }
    fn is_markov(&self) -> bool {
        (**self).is_markov()
    }
    fn respond(&self, window: &[AtomSet], inning: usize) -> Result<TwoMove, TacticError> {
        (**self).respond(window, inning)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// Window of the last `k` entries of `history`.
pub fn window_of(history: &[AtomSet], k: usize) -> &[AtomSet] {
    &history[history.len().saturating_sub(k)..]
}

/// Always answers with the empty set.
#[derive(Clone, Copy, Debug, Default)]
pub struct EmptyTactic;

impl Tactic for EmptyTactic {
    fn window(&self) -> usize {
        1
    }
    fn respond(&self, _: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        Ok(TwoMove::default())
    }
    fn label(&self) -> String {
        "empty".into()
    }
}

/// Answers with ONE's latest move.
#[derive(Clone, Copy, Debug, Default)]
pub struct CopyTactic;

impl Tactic for CopyTactic {
    fn window(&self) -> usize {
        1
    }
    fn respond(&self, window: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        Ok(TwoMove::plain(*window.last().ok_or_else(|| {
            TacticError::Contract("empty window".into())
        })?))
    }
    fn label(&self) -> String {
        "copy".into()
    }
}

type MoveFn = dyn Fn(&[AtomSet], usize) -> Result<TwoMove, TacticError> + Send + Sync;

/// A tactic given by a closure.
#[derive(Clone)]
pub struct FnTactic {
    pub k: usize,
    pub markov: bool,
    pub name: String,
    pub f: Arc<MoveFn>,
}

impl FnTactic {
    pub fn new(
        k: usize,
        name: impl Into<String>,
        f: impl Fn(&[AtomSet], usize) -> Result<TwoMove, TacticError> + Send + Sync + 'static,
    ) -> Self {
        FnTactic {
            k,
            markov: false,
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn markov(mut self) -> Self {
        self.markov = true;
        self
    }
}

impl std::fmt::Debug for FnTactic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FnTactic({}, k={})", self.name, self.k)
    }
}

impl Tactic for FnTactic {
    fn window(&self) -> usize {
        self.k
    }
    fn is_markov(&self) -> bool {
        self.markov
    }
    fn respond(&self, window: &[AtomSet], inning: usize) -> Result<TwoMove, TacticError> {
        (self.f)(window, inning)
    }
    fn label(&self) -> String {
        self.name.clone()
    }
}
