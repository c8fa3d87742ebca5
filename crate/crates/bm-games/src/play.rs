//! Plays and exhaustive verification.

use crate::error::BmError;
use crate::space::BmSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_BM_BUDGET: u64 = 5_000_000;

/// TWO's strategy seeing the last `window()` ONE moves, oldest first.
/// Non-Markov tactics are always handed inning 0.
pub trait BmTactic<O>: Send + Sync {
    fn window(&self) -> usize;
    fn is_markov(&self) -> bool {
        false
    }
    fn respond(&self, window: &[O], inning: usize) -> Result<O, BmError>;
    fn label(&self) -> String;
}

impl<O, T: BmTactic<O> + ?Sized> BmTactic<O> for std::sync::Arc<T> {
    fn window(&self) -> usize {
        (**self).window()
    }
    fn is_markov(&self) -> bool {
        (**self).is_markov()
    }
    fn respond(&self, window: &[O], inning: usize) -> Result<O, BmError> {
        (**self).respond(window, inning)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// Candidate ONE moves inside TWO's last answer. The engine drops any
/// candidate that is empty, not open, or not inside.
pub trait OneMenu<S: BmSpace>: Sync {
    fn moves(&self, space: &S, within: &S::Open) -> Vec<S::Open>;
}

impl<S: BmSpace, F: Fn(&S, &S::Open) -> Vec<S::Open> + Sync> OneMenu<S> for F {
    fn moves(&self, space: &S, within: &S::Open) -> Vec<S::Open> {
        self(space, within)
    }
}

pub trait OneStrategy<O> {
    /// `history` holds the finished innings as (ONE, TWO) pairs.
    fn choose(&self, history: &[(O, O)], legal: &[O]) -> Option<O>;
}

/// Plays the listed moves, legal or not, then stops.
#[derive(Clone, Debug)]
pub struct Scripted<O>(pub Vec<O>);

impl<O: Clone> OneStrategy<O> for Scripted<O> {
    fn choose(&self, history: &[(O, O)], _: &[O]) -> Option<O> {
        self.0.get(history.len()).cloned()
    }
}

/// Uniform legal move drawn from a generator keyed by seed and inning.
#[derive(Clone, Copy, Debug)]
pub struct SeededOne(pub u64);

impl<O: Clone> OneStrategy<O> for SeededOne {
    fn choose(&self, history: &[(O, O)], legal: &[O]) -> Option<O> {
        if legal.is_empty() {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(
            self.0 ^ (history.len() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
        );
        Some(legal[rng.gen_range(0..legal.len())].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmInning<O> {
    pub inning: usize,
    pub one: O,
    pub two: Option<O>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "end", rename_all = "snake_case")]
pub enum BmEnd {
    Complete,
    /// ONE had no legal move.
    NoMove {
        inning: usize,
    },
    /// The tactic ran past the truncation.
    Horizon {
        inning: usize,
        reason: String,
    },
    OneFault {
        inning: usize,
        reason: String,
    },
    TwoFault {
        inning: usize,
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlayResult {
    Win,
    Lose,
    Inconclusive,
    OneFault,
    TwoFault,
}

impl PlayResult {
    pub fn two_lost(self) -> bool {
        matches!(self, PlayResult::Lose | PlayResult::TwoFault)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmTranscript<O> {
    pub tactic: String,
    pub depth: usize,
    pub innings: Vec<BmInning<O>>,
    pub end: BmEnd,
    pub result: PlayResult,
}

impl<O: Clone> BmTranscript<O> {
    pub fn one_moves(&self) -> Vec<O> {
        self.innings.iter().map(|i| i.one.clone()).collect()
    }
}

fn legal_moves<S: BmSpace>(space: &S, menu: &dyn OneMenu<S>, within: &S::Open) -> Vec<S::Open> {
    let mut out: Vec<S::Open> = Vec::new();
    for m in menu.moves(space, within) {
        if !space.is_empty(&m) && space.is_open(&m) && space.subset(&m, within) && !out.contains(&m)
        {
            out.push(m);
        }
    }
    out
}

fn two_answer<S: BmSpace>(
    space: &S,
    tactic: &dyn BmTactic<S::Open>,
    ones: &[S::Open],
    inning: usize,
) -> Result<S::Open, BmEnd> {
    let k = tactic.window().max(1);
    let window = &ones[ones.len().saturating_sub(k)..];
    let shown = if tactic.is_markov() { inning } else { 0 };
    let last = ones.last().expect("ONE has moved");
    match tactic.respond(window, shown) {
        Err(BmError::Horizon(reason)) => Err(BmEnd::Horizon { inning, reason }),
        Err(e) => Err(BmEnd::TwoFault {
            inning,
            reason: e.to_string(),
        }),
        Ok(t) if space.is_empty(&t) => Err(BmEnd::TwoFault {
            inning,
            reason: "empty answer".into(),
        }),
        Ok(t) if !space.is_open(&t) => Err(BmEnd::TwoFault {
            inning,
            reason: format!("{t:?} is not open"),
        }),
        Ok(t) if !space.subset(&t, last) => Err(BmEnd::TwoFault {
            inning,
            reason: format!("{t:?} is not inside {last:?}"),
        }),
        Ok(t) => Ok(t),
    }
}

fn result_of<S: BmSpace>(space: &S, end: &BmEnd, innings: &[BmInning<S::Open>]) -> PlayResult {
    match end {
        BmEnd::Horizon { .. } => PlayResult::Inconclusive,
        BmEnd::OneFault { .. } => PlayResult::OneFault,
        BmEnd::TwoFault { .. } => PlayResult::TwoFault,
        BmEnd::Complete | BmEnd::NoMove { .. } => {
            let meet = innings
                .iter()
                .flat_map(|i| std::iter::once(&i.one).chain(i.two.as_ref()))
                .fold(space.whole(), |acc, u| space.meet(&acc, u));
            if space.is_empty(&meet) {
                PlayResult::Lose
            } else {
                PlayResult::Win
            }
        }
    }
}

/// One play of `depth` innings.
pub fn bm_play<S: BmSpace>(
    space: &S,
    one: &dyn OneStrategy<S::Open>,
    tactic: &dyn BmTactic<S::Open>,
    menu: &dyn OneMenu<S>,
    depth: usize,
) -> BmTranscript<S::Open> {
    let mut innings: Vec<BmInning<S::Open>> = Vec::new();
    let mut history: Vec<(S::Open, S::Open)> = Vec::new();
    let mut ones: Vec<S::Open> = Vec::new();
    let mut end = BmEnd::Complete;
    for n in 1..=depth {
        let within = history
            .last()
            .map_or_else(|| space.whole(), |(_, t)| t.clone());
        let legal = legal_moves(space, menu, &within);
        let Some(o) = one.choose(&history, &legal) else {
            end = BmEnd::NoMove { inning: n };
            break;
        };
        let ok = !space.is_empty(&o) && space.is_open(&o) && space.subset(&o, &within);
        ones.push(o.clone());
        if !ok {
            innings.push(BmInning {
                inning: n,
                one: o,
                two: None,
            });
            end = BmEnd::OneFault {
                inning: n,
                reason: "move is not a nonempty open inside TWO's answer".into(),
            };
            break;
        }
        match two_answer(space, tactic, &ones, n) {
            Ok(t) => {
                innings.push(BmInning {
                    inning: n,
                    one: o.clone(),
                    two: Some(t.clone()),
                });
                history.push((o, t));
            }
            Err(e) => {
                innings.push(BmInning {
                    inning: n,
                    one: o,
                    two: None,
                });
                end = e;
                break;
            }
        }
    }
    let result = result_of(space, &end, &innings);
    BmTranscript {
        tactic: tactic.label(),
        depth,
        innings,
        end,
        result,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmVerifyConfig {
    pub depth: usize,
    pub budget: u64,
    pub jobs: usize,
}

impl BmVerifyConfig {
    pub fn new(depth: usize) -> Self {
        BmVerifyConfig {
            depth,
            budget: DEFAULT_BM_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmStats {
    pub nodes: u64,
    pub leaves: u64,
    pub full_depth: u64,
    pub horizon: u64,
}

impl BmStats {
    fn add(&mut self, o: &BmStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.full_depth += o.full_depth;
        self.horizon += o.horizon;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "transcript", rename_all = "snake_case")]
pub enum BmVerdict<O> {
    AllWins,
    Defeat(Box<BmTranscript<O>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmReport<O> {
    pub verdict: BmVerdict<O>,
    pub stats: BmStats,
}

impl<O> BmReport<O> {
    pub fn all_wins(&self) -> bool {
        matches!(self.verdict, BmVerdict::AllWins)
    }
}

struct Search<'a, S: BmSpace> {
    space: &'a S,
    tactic: &'a dyn BmTactic<S::Open>,
    menu: &'a dyn OneMenu<S>,
    depth: usize,
    budget: u64,
    spent: &'a AtomicU64,
}

impl<S: BmSpace> Search<'_, S> {
    /// Depth-first over ONE's legal moves; returns the first losing line.
    fn run(
        &self,
        ones: &mut Vec<S::Open>,
        within: S::Open,
        stats: &mut BmStats,
    ) -> Result<Option<Vec<S::Open>>, BmError> {
        let legal = legal_moves(self.space, self.menu, &within);
        if ones.len() == self.depth || legal.is_empty() {
            stats.leaves += 1;
            stats.full_depth += (ones.len() == self.depth) as u64;
            // descending legal plays end inside the last answer, which is nonempty
            return Ok(None);
        }
        for o in legal {
            if self.spent.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(BmError::Budget(self.budget));
            }
            stats.nodes += 1;
            ones.push(o);
            let n = ones.len();
            match two_answer(self.space, self.tactic, ones, n) {
                Ok(t) => {
                    if let Some(line) = self.run(ones, t, stats)? {
                        return Ok(Some(line));
                    }
                }
                Err(BmEnd::Horizon { .. }) => {
                    stats.leaves += 1;
                    stats.horizon += 1;
                }
                Err(_) => return Ok(Some(ones.clone())),
            }
            ones.pop();
        }
        Ok(None)
    }
}

/// Exhaustive search over every ONE play from the menu, to `depth` innings.
pub fn bm_verify<S: BmSpace>(
    space: &S,
    tactic: &dyn BmTactic<S::Open>,
    cfg: &BmVerifyConfig,
    menu: &dyn OneMenu<S>,
) -> Result<BmReport<S::Open>, BmError> {
    if let Some(max) = space.max_depth() {
        if cfg.depth > max {
            return Err(BmError::Contract(format!(
                "depth {} exceeds the space's depth {max}",
                cfg.depth
            )));
        }
    }
    let spent = AtomicU64::new(0);
    let search = Search {
        space,
        tactic,
        menu,
        depth: cfg.depth,
        budget: cfg.budget,
        spent: &spent,
    };
    let roots = legal_moves(space, menu, &space.whole());
    let jobs = cfg.jobs.max(1).min(roots.len().max(1));
    type RootResult<O> = Result<(Option<Vec<O>>, BmStats), BmError>;
    let run_root = |o: &S::Open| -> RootResult<S::Open> {
        let mut stats = BmStats {
            nodes: 1,
            ..BmStats::default()
        };
        let mut ones = vec![o.clone()];
        let line = match two_answer(space, tactic, &ones, 1) {
            Ok(t) => search.run(&mut ones, t, &mut stats)?,
            Err(BmEnd::Horizon { .. }) => {
                stats.leaves += 1;
                stats.horizon += 1;
                None
            }
            Err(_) => Some(ones),
        };
        Ok((line, stats))
    };
    let results: Vec<RootResult<S::Open>> = if jobs == 1 {
        roots.iter().map(run_root).collect()
    } else {
        let mut slots: Vec<Option<Result<_, _>>> = (0..roots.len()).map(|_| None).collect();
        std::thread::scope(|sc| {
            let handles: Vec<_> = (0..jobs)
                .map(|t| {
                    let roots = &roots;
                    let run_root = &run_root;
                    sc.spawn(move || {
                        (t..roots.len())
                            .step_by(jobs)
                            .map(|i| (i, run_root(&roots[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots
            .into_iter()
            .map(|s| s.expect("every root searched"))
            .collect()
    };
    let mut stats = BmStats::default();
    for r in results {
        let (line, s) = r?;
        stats.add(&s);
        if let Some(line) = line {
            let tr = bm_play(space, &Scripted(line), tactic, menu, cfg.depth);
            return Ok(BmReport {
                verdict: BmVerdict::Defeat(Box::new(tr)),
                stats,
            });
        }
    }
    Ok(BmReport {
        verdict: BmVerdict::AllWins,
        stats,
    })
}
