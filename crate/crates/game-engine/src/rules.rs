//! Move legality and the finite win rule.

use ideal_core::{AtomSet, IdealInstance};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    /// ONE moves in a fixed family, strictly increasing.
    MgFamily,
    /// ONE moves anywhere in the completion, strictly increasing.
    MgFull,
    /// ONE's next move must absorb ONE's and TWO's previous moves.
    Smg,
    /// As `Smg`, with TWO's second component absorbed as well.
    Vsg,
}

impl GameKind {
    pub fn parse(s: &str) -> Option<GameKind> {
        match s {
            "mg" | "mg_family" => Some(GameKind::MgFamily),
            "mg_full" => Some(GameKind::MgFull),
            "smg" => Some(GameKind::Smg),
            "vsg" => Some(GameKind::Vsg),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameKind::MgFamily => "mg_family",
            GameKind::MgFull => "mg_full",
            GameKind::Smg => "smg",
            GameKind::Vsg => "vsg",
        }
    }

    pub fn is_monotone_mg(self) -> bool {
        matches!(self, GameKind::MgFamily | GameKind::MgFull)
    }
}

/// TWO's move. `s` is used only in the very strong game and must be empty
/// otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoMove {
    pub t: AtomSet,
    pub s: AtomSet,
}

impl TwoMove {
    pub fn plain(t: AtomSet) -> Self {
        TwoMove {
            t,
            s: AtomSet::EMPTY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Legality {
    pub legal: bool,
    pub reason: String,
}

impl Legality {
    fn ok() -> Self {
        Legality {
            legal: true,
            reason: String::new(),
        }
    }

    fn no(reason: impl Into<String>) -> Self {
        Legality {
            legal: false,
            reason: reason.into(),
        }
    }
}

/// The board: an ideal plus, for the family game, the members ONE may use.
#[derive(Clone, Debug)]
pub struct Arena {
    pub kind: GameKind,
    pub instance: IdealInstance,
    /// Family members for `MgFamily`; ignored by the other kinds.
    pub family: Vec<AtomSet>,
}

impl Arena {
    pub fn new(kind: GameKind, instance: IdealInstance, family: Vec<AtomSet>) -> Self {
        Arena {
            kind,
            instance,
            family,
        }
    }

    /// Whether ONE may play `mv` after `prev` (ONE's and TWO's last moves).
    pub fn legal_one(&self, prev: Option<(AtomSet, TwoMove)>, mv: AtomSet) -> Legality {
        let membership = self.admissible(mv);
        if !membership.legal {
            return membership;
        }
        self.follows(prev, mv)
    }

    /// Whether `mv` may ever be played by ONE, regardless of history.
    pub fn admissible(&self, mv: AtomSet) -> Legality {
        if self.kind == GameKind::MgFamily && !self.family.contains(&mv) {
            return Legality::no(format!("{mv} is not a family member"));
        }
        if self.instance.in_sigma(mv).is_none() {
            return Legality::no(format!("{mv} is not in the completion"));
        }
        Legality::ok()
    }

    /// The inning-to-inning growth rule alone.
    pub fn follows(&self, prev: Option<(AtomSet, TwoMove)>, mv: AtomSet) -> Legality {
        let Some((o, two)) = prev else {
            return Legality::ok();
        };
        match self.kind {
            GameKind::MgFamily | GameKind::MgFull if !o.is_proper_subset(mv) => {
                Legality::no(format!("{mv} is not a proper superset of {o}"))
            }
            GameKind::Smg if !(o | two.t).is_subset(mv) => {
                Legality::no(format!("{mv} does not contain O ∪ T = {}", o | two.t))
            }
            GameKind::Vsg if !(o | two.t | two.s).is_subset(mv) => Legality::no(format!(
                "{mv} does not contain O ∪ T ∪ S = {}",
                o | two.t | two.s
            )),
            _ => Legality::ok(),
        }
    }

    /// Fast form of [`Arena::follows`] for the search loops.
    pub(crate) fn follows_ok(&self, prev: Option<(AtomSet, TwoMove)>, mv: AtomSet) -> bool {
        match prev {
            None => true,
            Some((o, two)) => match self.kind {
                GameKind::MgFamily | GameKind::MgFull => o.is_proper_subset(mv),
                GameKind::Smg => (o | two.t).is_subset(mv),
                GameKind::Vsg => (o | two.t | two.s).is_subset(mv),
            },
        }
    }

    pub fn legal_two(&self, mv: TwoMove) -> Legality {
        if self.instance.in_j(mv.t).is_none() {
            return Legality::no(format!("T = {} is not in J", mv.t));
        }
        if self.kind == GameKind::Vsg {
            if self.instance.in_sigma(mv.s).is_none() {
                return Legality::no(format!("S = {} is not in the completion", mv.s));
            }
        } else if !mv.s.is_empty() {
            return Legality::no("second component is only allowed in the very strong game");
        }
        Legality::ok()
    }
}

/// Outcome of the finite win rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    Win,
    Lose {
        uncovered: usize,
        move_index: usize,
    },
    /// No ONE move was old enough to be checked.
    Inconclusive,
}

/// TWO wins iff every ONE move older than `lag` innings is covered by the
/// union of all TWO moves. `ones` and `twos` cover the completed innings.
pub fn finite_win(ones: &[AtomSet], twos: &[AtomSet], lag: usize) -> Outcome {
    let played = ones.len().min(twos.len());
    if played <= lag {
        return Outcome::Inconclusive;
    }
    let covered = twos[..played].iter().fold(AtomSet::EMPTY, |a, &t| a | t);
    for (i, o) in ones[..played - lag].iter().enumerate() {
        if let Some(x) = o.minus(covered).first() {
            return Outcome::Lose {
                uncovered: x,
                move_index: i,
            };
        }
    }
    Outcome::Win
}
