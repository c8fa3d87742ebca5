//! Single plays, transcripts and replay.

use crate::rules::{finite_win, Arena, GameKind, Legality, Outcome, TwoMove};
use crate::tactic::{window_of, Tactic, TacticError};
use ideal_core::AtomSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    One,
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inning {
    pub inning: usize,
    pub one: AtomSet,
    pub one_legality: Legality,
    pub two: Option<TwoMove>,
    pub two_legality: Option<Legality>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "end", rename_all = "snake_case")]
pub enum PlayEnd {
    Complete,
    Resigned {
        inning: usize,
    },
    /// No admissible continuation: ONE had no legal move, or TWO's tactic
    /// needed a member above the top.
    Exhausted {
        inning: usize,
        reason: String,
    },
    Fault {
        player: Player,
        inning: usize,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PlayVerdict {
    Win,
    Lose { uncovered: usize, move_index: usize },
    Inconclusive,
    Fault { player: Player, inning: usize },
}

impl PlayVerdict {
    pub fn two_lost(&self) -> bool {
        matches!(
            self,
            PlayVerdict::Lose { .. }
                | PlayVerdict::Fault {
                    player: Player::Two,
                    ..
                }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub kind: GameKind,
    pub depth: usize,
    pub lag: usize,
    pub tactic: String,
    pub innings: Vec<Inning>,
    pub end: PlayEnd,
    pub verdict: PlayVerdict,
    /// First inning whose TWO move was not reproduced on replay.
    pub purity_violation: Option<usize>,
}

impl Transcript {
    pub fn ones(&self) -> Vec<AtomSet> {
        self.innings.iter().map(|i| i.one).collect()
    }

    /// TWO's first components over the completed innings.
    pub fn twos(&self) -> Vec<AtomSet> {
        self.innings
            .iter()
            .filter_map(|i| i.two.map(|m| m.t))
            .collect()
    }

    /// One JSON object per line: a header, one line per inning, a footer.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let header = serde_json::json!({
            "kind": self.kind, "depth": self.depth, "lag": self.lag, "tactic": self.tactic,
        });
        out.push_str(&header.to_string());
        out.push('\n');
        for inning in &self.innings {
            out.push_str(&serde_json::to_string(inning).expect("inning serializes"));
            out.push('\n');
        }
        let footer = serde_json::json!({
            "end": self.end, "verdict": self.verdict, "purity_violation": self.purity_violation,
        });
        out.push_str(&footer.to_string());
        out.push('\n');
        out
    }
}

pub(crate) fn verdict_of(
    end: &PlayEnd,
    ones: &[AtomSet],
    twos: &[AtomSet],
    lag: usize,
) -> PlayVerdict {
    if let PlayEnd::Fault { player, inning, .. } = end {
        return PlayVerdict::Fault {
            player: *player,
            inning: *inning,
        };
    }
    match finite_win(ones, twos, lag) {
        Outcome::Win => PlayVerdict::Win,
        Outcome::Lose {
            uncovered,
            move_index,
        } => PlayVerdict::Lose {
            uncovered,
            move_index,
        },
        Outcome::Inconclusive => PlayVerdict::Inconclusive,
    }
}

/// ONE's side of a play: picks among the legal menu moves, or resigns.
pub trait OneStrategy {
    fn choose(&self, history: &[(AtomSet, TwoMove)], legal: &[AtomSet]) -> Option<AtomSet>;
}

/// First legal move in menu order.
pub struct MenuOrder;

impl OneStrategy for MenuOrder {
    fn choose(&self, _: &[(AtomSet, TwoMove)], legal: &[AtomSet]) -> Option<AtomSet> {
        legal.first().copied()
    }
}

/// A fixed list of moves, played regardless of legality; resigns at the end.
pub struct Scripted(pub Vec<AtomSet>);

impl OneStrategy for Scripted {
    fn choose(&self, history: &[(AtomSet, TwoMove)], _: &[AtomSet]) -> Option<AtomSet> {
        self.0.get(history.len()).copied()
    }
}

/// Uniform legal move, a pure function of the seed and the history.
pub struct SeededRandom(pub u64);

impl OneStrategy for SeededRandom {
    fn choose(&self, history: &[(AtomSet, TwoMove)], legal: &[AtomSet]) -> Option<AtomSet> {
        if legal.is_empty() {
            return None;
        }
        let mut mix = self.0;
        for (o, t) in history {
            for x in [o.0, t.t.0, t.s.0] {
                mix = mix.rotate_left(13)
                    ^ (x as u64)
                    ^ ((x >> 64) as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(mix ^ history.len() as u64);
        Some(legal[rng.gen_range(0..legal.len())])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayConfig {
    pub depth: usize,
    pub lag: usize,
    /// ONE's candidate moves.
    pub menu: Vec<AtomSet>,
}

/// Longest strict chain starting at each menu entry (counting the entry).
pub fn chain_heights(menu: &[AtomSet]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..menu.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(menu[i].len()));
    let mut h = vec![1usize; menu.len()];
    for &i in &order {
        for &j in &order {
            if menu[i].is_proper_subset(menu[j]) {
                h[i] = h[i].max(h[j] + 1);
            }
        }
    }
    h
}

/// Menu entries ONE may play at `inning` (1-based) after `prev`. In the
/// monotone games a move must still admit a chain reaching full depth.
pub(crate) fn options(
    arena: &Arena,
    menu: &[AtomSet],
    heights: &[usize],
    depth: usize,
    inning: usize,
    prev: Option<(AtomSet, TwoMove)>,
) -> Vec<usize> {
    let need = depth + 1 - inning;
    (0..menu.len())
        .filter(|&i| arena.follows_ok(prev, menu[i]))
        .filter(|&i| !arena.kind.is_monotone_mg() || heights[i] >= need)
        .collect()
}

/// Play up to `depth` innings.
pub fn run_play(
    arena: &Arena,
    one: &dyn OneStrategy,
    tactic: &dyn Tactic,
    config: &PlayConfig,
) -> Transcript {
    let heights = chain_heights(&config.menu);
    let mut innings: Vec<Inning> = Vec::new();
    let mut history: Vec<(AtomSet, TwoMove)> = Vec::new();
    let mut ones: Vec<AtomSet> = Vec::new();
    let mut end = PlayEnd::Complete;
    for n in 1..=config.depth {
        let prev = history.last().copied();
        let legal: Vec<AtomSet> = options(arena, &config.menu, &heights, config.depth, n, prev)
            .into_iter()
            .map(|i| config.menu[i])
            .collect();
        if legal.is_empty() {
            end = PlayEnd::Exhausted {
                inning: n,
                reason: "ONE has no legal move".into(),
            };
            break;
        }
        let Some(o) = one.choose(&history, &legal) else {
            end = PlayEnd::Resigned { inning: n };
            break;
        };
        let one_legality = arena.legal_one(prev, o);
        ones.push(o);
        if !one_legality.legal {
            let reason = one_legality.reason.clone();
            innings.push(Inning {
                inning: n,
                one: o,
                one_legality,
                two: None,
                two_legality: None,
            });
            end = PlayEnd::Fault {
                player: Player::One,
                inning: n,
                reason,
            };
            break;
        }
        match tactic.respond(window_of(&ones, tactic.window()), n) {
            Ok(mv) => {
                let two_legality = arena.legal_two(mv);
                let bad = (!two_legality.legal).then(|| two_legality.reason.clone());
                innings.push(Inning {
                    inning: n,
                    one: o,
                    one_legality,
                    two: Some(mv),
                    two_legality: Some(two_legality),
                });
                if let Some(reason) = bad {
                    end = PlayEnd::Fault {
                        player: Player::Two,
                        inning: n,
                        reason,
                    };
                    break;
                }
                history.push((o, mv));
            }
            Err(e) => {
                innings.push(Inning {
                    inning: n,
                    one: o,
                    one_legality,
                    two: None,
                    two_legality: None,
                });
                end = match e {
                    TacticError::Ceiling(r) => PlayEnd::Exhausted {
                        inning: n,
                        reason: r,
                    },
                    TacticError::Contract(r) => PlayEnd::Fault {
                        player: Player::Two,
                        inning: n,
                        reason: r,
                    },
                };
                break;
            }
        }
    }
    let twos: Vec<AtomSet> = history.iter().map(|(_, m)| m.t).collect();
    let verdict = verdict_of(&end, &ones, &twos, config.lag);
    let mut tr = Transcript {
        kind: arena.kind,
        depth: config.depth,
        lag: config.lag,
        tactic: tactic.label(),
        innings,
        end,
        verdict,
        purity_violation: None,
    };
    tr.purity_violation = purity_check(&tr, tactic);
    tr
}

/// First inning whose recorded TWO move differs from a fresh call.
pub fn purity_check(tr: &Transcript, tactic: &dyn Tactic) -> Option<usize> {
    let ones = tr.ones();
    for (i, inning) in tr.innings.iter().enumerate() {
        let Some(recorded) = inning.two else { continue };
        let again = tactic.respond(window_of(&ones[..=i], tactic.window()), inning.inning);
        if again != Ok(recorded) {
            return Some(inning.inning);
        }
    }
    None
}

/// Recompute legality and the verdict from the recorded moves. Returns a
/// description of the first discrepancy.
pub fn recheck(arena: &Arena, tr: &Transcript) -> Result<(), String> {
    let mut prev: Option<(AtomSet, TwoMove)> = None;
    for inning in &tr.innings {
        if arena.legal_one(prev, inning.one) != inning.one_legality {
            return Err(format!("inning {}: ONE legality differs", inning.inning));
        }
        if let Some(mv) = inning.two {
            if Some(arena.legal_two(mv)) != inning.two_legality {
                return Err(format!("inning {}: TWO legality differs", inning.inning));
            }
            prev = Some((inning.one, mv));
        }
    }
    let played = tr.innings.iter().take_while(|i| i.two.is_some()).count();
    let ones = tr.ones();
    let twos = tr.twos();
    if matches!(arena.kind, GameKind::Smg | GameKind::Vsg) && played > 0 {
        // the growth rule already absorbs every earlier TWO move
        let t_before: AtomSet = twos[..played - 1]
            .iter()
            .fold(AtomSet::EMPTY, |a, &t| a | t);
        let o_all: AtomSet = ones[..played].iter().fold(AtomSet::EMPTY, |a, &o| a | o);
        if !t_before.is_subset(o_all) {
            return Err("TWO moves escape ONE's moves".into());
        }
    }
    if verdict_of(&tr.end, &ones, &twos, tr.lag) != tr.verdict {
        return Err("verdict differs".into());
    }
    Ok(())
}
