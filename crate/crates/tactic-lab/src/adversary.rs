//! Colorings read off a tactic along a chain, and the adversary that plays
//! a path on which those colors stay bounded.

use coherent_decomp::SizeLadder;
use game_engine::{run_play, Arena, PlayConfig, Scripted, Tactic, TacticError, Transcript};
use ideal_core::AtomSet;
use path_partition::{find_bounded_path_from, increasing_tuples, Coloring, FinitePoset, Palette};
use serde::{Deserialize, Serialize};

/// Responses to every prefix of the window `chain[w[0]], chain[w[1]], ...`.
fn prefix_responses(
    tactic: &dyn Tactic,
    chain: &[AtomSet],
    w: &[usize],
) -> Result<Vec<AtomSet>, TacticError> {
    let sets: Vec<AtomSet> = w.iter().map(|&i| chain[i]).collect();
    (1..=sets.len())
        .map(|j| tactic.respond(&sets[..j], j).map(|mv| mv.t))
        .collect()
}

/// A window the tactic refused to answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refusal {
    pub window: Vec<usize>,
    pub error: TacticError,
}

fn extract(
    tactic: &dyn Tactic,
    chain: &[AtomSet],
    palette_size: u64,
    color: impl Fn(&[AtomSet]) -> u64,
) -> Result<Coloring, Refusal> {
    let k = tactic.window();
    let mut col = Coloring::new(k, palette_size);
    for w in increasing_tuples(&FinitePoset::chain(chain.len()), k) {
        let rs = prefix_responses(tactic, chain, &w).map_err(|error| Refusal {
            window: w.clone(),
            error,
        })?;
        col.colors.insert(w, color(&rs));
    }
    Ok(col)
}

/// Color of a window: the least ladder index bounding the size of the
/// union of the tactic's answers to its prefixes, or the overflow color
/// `bounds.len()`.
pub fn extract_coloring(
    tactic: &dyn Tactic,
    chain: &[AtomSet],
    ladder: &SizeLadder,
) -> Result<ChainColoring, Refusal> {
    let overflow = ladder.bounds.len() as u64;
    let coloring = extract(tactic, chain, overflow + 1, |rs| {
        let size = rs.iter().fold(AtomSet::EMPTY, |a, &t| a | t).len();
        ladder
            .bounds
            .iter()
            .position(|&b| size <= b)
            .map_or(overflow, |i| i as u64)
    })?;
    Ok(ChainColoring {
        coloring,
        anchors: 0,
    })
}

/// Coloring over `chain`, possibly preceded by `anchors` extra nodes
/// through which every searched path must start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainColoring {
    pub coloring: Coloring,
    pub anchors: usize,
}

/// Trace coloring with `k - 1` anchors in front of the chain. A window
/// that ends `j` nodes past the anchors and runs through the last `k - j`
/// of them is colored by the answer to the first `j` moves alone. A window
/// that skips an anchor is poisoned with every bit set. Real windows carry
/// the trace of their own answer, so each play is charged exactly the
/// answers TWO gives in it.
pub fn extract_trace_coloring(
    tactic: &dyn Tactic,
    chain: &[AtomSet],
    mask_bits: u32,
    trace: impl Fn(AtomSet) -> u64,
) -> Result<ChainColoring, Refusal> {
    let k = tactic.window();
    let anchors = k - 1;
    let poison = (1u64 << mask_bits) - 1;
    let mut col = Coloring::new(k, 1 << mask_bits);
    for w in increasing_tuples(&FinitePoset::chain(chain.len() + anchors), k) {
        let v = w.iter().take_while(|&&i| i < anchors).count();
        let color = if w[..v].iter().copied().ne(anchors - v..anchors) {
            poison
        } else {
            let real: Vec<AtomSet> = w[v..].iter().map(|&i| chain[i - anchors]).collect();
            let t = tactic
                .respond(&real, real.len())
                .map_err(|error| Refusal {
                    window: w[v..].iter().map(|&i| i - anchors).collect(),
                    error,
                })?
                .t;
            trace(t)
        };
        col.colors.insert(w, color);
    }
    Ok(ChainColoring {
        coloring: col,
        anchors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefeatReport {
    /// Chain indices ONE played.
    pub path: Vec<usize>,
    pub window_colors: Vec<u64>,
    pub transcript: Transcript,
    /// An atom the engine found uncovered, when it scored a loss for TWO.
    pub uncovered: Option<usize>,
}

impl DefeatReport {
    pub fn confirmed(&self) -> bool {
        self.transcript.verdict.two_lost()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefeatConfig {
    pub length: usize,
    pub lag: usize,
    pub palette: Palette,
    pub budget: u64,
    pub jobs: usize,
}

impl DefeatConfig {
    pub fn new(length: usize, lag: usize, palette: Palette) -> Self {
        DefeatConfig {
            length,
            lag,
            palette,
            budget: path_partition::DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

/// Replay `path` through the engine.
pub fn replay_path(
    arena: &Arena,
    tactic: &dyn Tactic,
    chain: &[AtomSet],
    path: &[usize],
    lag: usize,
) -> Transcript {
    let moves: Vec<AtomSet> = path.iter().map(|&i| chain[i]).collect();
    let cfg = PlayConfig {
        depth: path.len(),
        lag,
        menu: chain.to_vec(),
    };
    run_play(arena, &Scripted(moves), tactic, &cfg)
}

/// Search the chain for a path whose colors stay inside the palette and
/// replay it. `None` when no such path exists.
pub fn targeted_defeat(
    arena: &Arena,
    tactic: &dyn Tactic,
    chain: &[AtomSet],
    col: &ChainColoring,
    cfg: &DefeatConfig,
) -> Option<DefeatReport> {
    let a = col.anchors;
    let poset = FinitePoset::chain(chain.len() + a);
    let roots: Vec<usize> = if a == 0 {
        (0..chain.len()).collect()
    } else {
        vec![0]
    };
    let rep = find_bounded_path_from(
        &poset,
        &col.coloring,
        cfg.length + a,
        cfg.palette,
        cfg.budget,
        cfg.jobs,
        &roots,
    )
    .ok()?;
    let path: Vec<usize> = rep.path?.into_iter().skip(a).map(|i| i - a).collect();
    let transcript = replay_path(arena, tactic, chain, &path, cfg.lag);
    let uncovered = match &transcript.verdict {
        game_engine::PlayVerdict::Lose { uncovered, .. } => Some(*uncovered),
        _ => None,
    };
    Some(DefeatReport {
        path,
        window_colors: rep.window_colors,
        transcript,
        uncovered,
    })
}

/// Extract the trace coloring and run the adversary; a refused window is
/// played directly, since a refusal is already a fault for TWO.
pub fn trace_defeat(
    arena: &Arena,
    tactic: &dyn Tactic,
    chain: &[AtomSet],
    mask_bits: u32,
    trace: impl Fn(AtomSet) -> u64,
    cfg: &DefeatConfig,
) -> Option<DefeatReport> {
    match extract_trace_coloring(tactic, chain, mask_bits, trace) {
        Ok(col) => targeted_defeat(arena, tactic, chain, &col, cfg),
        Err(r) => Some(DefeatReport {
            transcript: replay_path(arena, tactic, chain, &r.window, cfg.lag),
            path: r.window,
            window_colors: Vec::new(),
            uncovered: None,
        }),
    }
}
