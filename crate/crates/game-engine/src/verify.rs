//! Exhaustive bounded-depth verification of a tactic against every ONE
//! play from a finite menu.

use crate::play::{
    chain_heights, options, purity_check, verdict_of, Inning, PlayEnd, Player, Transcript,
};
use crate::rules::{Arena, TwoMove};
use crate::tactic::{window_of, Tactic, TacticError};
use ideal_core::AtomSet;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use thiserror::Error;

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub depth: usize,
    pub lag: usize,
    pub menu: Vec<AtomSet>,
    pub budget: u64,
    pub jobs: usize,
}

impl VerifyConfig {
    pub fn new(depth: usize, lag: usize, menu: Vec<AtomSet>) -> Self {
        VerifyConfig {
            depth,
            lag,
            menu,
            budget: DEFAULT_NODE_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("node budget {0} exceeded")]
    Budget(u64),
    #[error("menu entry {index} is not a legal ONE move: {reason}")]
    BadMenu { index: usize, reason: String },
    #[error("menu has no strict chain of length {depth}")]
    NotExtendable { depth: usize },
    #[error("depth must be positive and the menu nonempty")]
    Empty,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafStats {
    pub nodes: u64,
    pub leaves: u64,
    pub full_depth: u64,
    pub exhausted: u64,
    pub inconclusive: u64,
    pub max_depth: usize,
}

impl LeafStats {
    fn add(&mut self, o: &LeafStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.full_depth += o.full_depth;
        self.exhausted += o.exhausted;
        self.inconclusive += o.inconclusive;
        self.max_depth = self.max_depth.max(o.max_depth);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "transcript", rename_all = "snake_case")]
pub enum Verdict {
    AllWins,
    Defeat(Box<Transcript>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub stats: LeafStats,
}

impl VerifyReport {
    pub fn all_wins(&self) -> bool {
        self.verdict == Verdict::AllWins
    }
}

/// Check the menu once: every entry admissible and, for the monotone
/// games, a strict chain of full length present.
pub fn check_menu(arena: &Arena, config: &VerifyConfig) -> Result<(), VerifyError> {
    if config.depth == 0 || config.menu.is_empty() {
        return Err(VerifyError::Empty);
    }
    for (index, &m) in config.menu.iter().enumerate() {
        let l = arena.admissible(m);
        if !l.legal {
            return Err(VerifyError::BadMenu {
                index,
                reason: l.reason,
            });
        }
    }
    if arena.kind.is_monotone_mg()
        && chain_heights(&config.menu).into_iter().max().unwrap_or(0) < config.depth
    {
        return Err(VerifyError::NotExtendable {
            depth: config.depth,
        });
    }
    Ok(())
}

type Response = Result<TwoMove, TacticError>;

struct Search<'a> {
    arena: &'a Arena,
    tactic: &'a dyn Tactic,
    config: &'a VerifyConfig,
    heights: Vec<usize>,
    counter: &'a AtomicU64,
    cache: HashMap<(Vec<AtomSet>, usize), Response>,
    ones: Vec<AtomSet>,
    twos: Vec<TwoMove>,
    stats: LeafStats,
}

enum Leaf {
    Continue,
    Defeat(Transcript),
}

impl<'a> Search<'a> {
    fn respond(&mut self, inning: usize) -> Response {
        let w = window_of(&self.ones, self.tactic.window()).to_vec();
        let key = (w, if self.tactic.is_markov() { inning } else { 0 });
        if let Some(r) = self.cache.get(&key) {
            return r.clone();
        }
        let r = self.tactic.respond(&key.0, inning);
        self.cache.insert(key, r.clone());
        r
    }

    fn tick(&mut self) -> Result<(), VerifyError> {
        self.stats.nodes += 1;
        if self.counter.fetch_add(1, Ordering::Relaxed) >= self.config.budget {
            return Err(VerifyError::Budget(self.config.budget));
        }
        Ok(())
    }

    /// Score a finished play; a TWO loss becomes a defeat transcript.
    fn leaf(&mut self, end: PlayEnd, pending: Option<Response>) -> Leaf {
        self.stats.leaves += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.twos.len());
        match end {
            PlayEnd::Complete => self.stats.full_depth += 1,
            PlayEnd::Exhausted { .. } => self.stats.exhausted += 1,
            _ => {}
        }
        let twos_t: Vec<AtomSet> = self.twos.iter().map(|m| m.t).collect();
        let verdict = verdict_of(&end, &self.ones, &twos_t, self.config.lag);
        if verdict == crate::play::PlayVerdict::Inconclusive {
            self.stats.inconclusive += 1;
        }
        if !verdict.two_lost() {
            return Leaf::Continue;
        }
        let mut innings = Vec::with_capacity(self.ones.len());
        let mut prev: Option<(AtomSet, TwoMove)> = None;
        for (i, &o) in self.ones.iter().enumerate() {
            let two = self.twos.get(i).copied().or_else(|| match &pending {
                Some(Ok(m)) if i + 1 == self.ones.len() => Some(*m),
                _ => None,
            });
            innings.push(Inning {
                inning: i + 1,
                one: o,
                one_legality: self.arena.legal_one(prev, o),
                two,
                two_legality: two.map(|m| self.arena.legal_two(m)),
            });
            if let Some(m) = two {
                prev = Some((o, m));
            }
        }
        let mut tr = Transcript {
            kind: self.arena.kind,
            depth: self.config.depth,
            lag: self.config.lag,
            tactic: self.tactic.label(),
            innings,
            end,
            verdict,
            purity_violation: None,
        };
        tr.purity_violation = purity_check(&tr, self.tactic);
        Leaf::Defeat(tr)
    }

    /// Explore ONE's move `idx` at the current position.
    fn step(&mut self, idx: usize) -> Result<Leaf, VerifyError> {
        self.tick()?;
        let inning = self.ones.len() + 1;
        self.ones.push(self.config.menu[idx]);
        let r = match self.respond(inning) {
            Ok(mv) => {
                let l = self.arena.legal_two(mv);
                if !l.legal {
                    let end = PlayEnd::Fault {
                        player: Player::Two,
                        inning,
                        reason: l.reason,
                    };
                    self.leaf(end, Some(Ok(mv)))
                } else {
                    self.twos.push(mv);
                    let r = self.expand()?;
                    self.twos.pop();
                    r
                }
            }
            Err(TacticError::Ceiling(reason)) => {
                self.leaf(PlayEnd::Exhausted { inning, reason }, None)
            }
            Err(TacticError::Contract(reason)) => self.leaf(
                PlayEnd::Fault {
                    player: Player::Two,
                    inning,
                    reason,
                },
                None,
            ),
        };
        self.ones.pop();
        Ok(r)
    }

    fn expand(&mut self) -> Result<Leaf, VerifyError> {
        let inning = self.ones.len() + 1;
        if inning > self.config.depth {
            return Ok(self.leaf(PlayEnd::Complete, None));
        }
        let prev = self
            .ones
            .last()
            .map(|&o| (o, *self.twos.last().expect("paired")));
        let opts = options(
            self.arena,
            &self.config.menu,
            &self.heights,
            self.config.depth,
            inning,
            prev,
        );
        if opts.is_empty() {
            let end = PlayEnd::Exhausted {
                inning,
                reason: "ONE has no legal move".into(),
            };
            return Ok(self.leaf(end, None));
        }
        for i in opts {
            if let Leaf::Defeat(t) = self.step(i)? {
                return Ok(Leaf::Defeat(t));
            }
        }
        Ok(Leaf::Continue)
    }
}

/// Exhaustive search over ONE's plays. Reports the lexicographically first
/// defeat (in menu order) if any play is lost.
pub fn verify_tactic(
    arena: &Arena,
    tactic: &dyn Tactic,
    config: &VerifyConfig,
) -> Result<VerifyReport, VerifyError> {
    check_menu(arena, config)?;
    let heights = chain_heights(&config.menu);
    let roots = options(arena, &config.menu, &heights, config.depth, 1, None);
    let counter = AtomicU64::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let jobs = config.jobs.max(1).min(roots.len().max(1));
    type RootResult = (usize, LeafStats, Option<Transcript>);
    let worker = |t: usize| -> Result<Vec<RootResult>, VerifyError> {
        let mut s = Search {
            arena,
            tactic,
            config,
            heights: heights.clone(),
            counter: &counter,
            cache: HashMap::new(),
            ones: Vec::new(),
            twos: Vec::new(),
            stats: LeafStats::default(),
        };
        let mut out = Vec::new();
        for (pos, &root) in roots.iter().enumerate().skip(t).step_by(jobs) {
            if pos > best.load(Ordering::SeqCst) {
                break;
            }
            s.stats = LeafStats::default();
            let leaf = s.step(root)?;
            let defeat = match leaf {
                Leaf::Defeat(tr) => {
                    best.fetch_min(pos, Ordering::SeqCst);
                    Some(tr)
                }
                Leaf::Continue => None,
            };
            out.push((pos, std::mem::take(&mut s.stats), defeat));
        }
        Ok(out)
    };
    let mut results: Vec<RootResult> = if jobs == 1 {
        worker(0)?
    } else {
        let parts: Vec<Result<Vec<RootResult>, VerifyError>> = std::thread::scope(|sc| {
            let handles: Vec<_> = (0..jobs).map(|t| sc.spawn(move || worker(t))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all
    };
    results.sort_by_key(|r| r.0);
    let cut = best.load(Ordering::SeqCst);
    let mut stats = LeafStats::default();
    let mut verdict = Verdict::AllWins;
    for (pos, st, defeat) in results {
        if pos > cut {
            break;
        }
        stats.add(&st);
        if let Some(tr) = defeat {
            verdict = Verdict::Defeat(Box::new(tr));
            break;
        }
    }
    Ok(VerifyReport { verdict, stats })
}
