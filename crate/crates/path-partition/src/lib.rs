//! Bounded-palette increasing paths in finite posets.
//!
//! A coloring assigns a color to every increasing `k`-tuple. A path of
//! length `L` is good when the colors of its consecutive `k`-windows stay
//! within a palette budget. The search is exhaustive, so a `None` answer
//! certifies that no good path of that length exists. It says nothing about
//! infinite paths.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("order is not strict: {0}")]
    NotStrict(String),
    #[error("node index {0} out of range")]
    UnknownNode(usize),
    #[error("no color for window {0:?}")]
    Uncolored(Vec<usize>),
    #[error("path length {length} shorter than arity {arity}")]
    TooShort { length: usize, arity: usize },
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
}

/// Finite strict partial order on nodes `0..labels.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    less: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    nodes: Vec<String>,
    less: Vec<(usize, usize)>,
}

impl Serialize for FinitePoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PosetDoc {
            nodes: self.labels.clone(),
            less: self.pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PosetDoc::deserialize(d)?;
        FinitePoset::new(doc.nodes, &doc.less).map_err(serde::de::Error::custom)
    }
}

impl FinitePoset {
    /// Build from explicit pairs; the relation must already be irreflexive
    /// and transitive.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PathError> {
        let n = labels.len();
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(PathError::UnknownNode(a));
            }
            if b >= n {
                return Err(PathError::UnknownNode(b));
            }
            less[a][b] = true;
        }
        let p = FinitePoset { labels, less };
        p.validate()?;
        Ok(p)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let less = (0..n).map(|a| (0..n).map(|b| a < b).collect()).collect();
        FinitePoset {
            labels: (0..n).map(|i| i.to_string()).collect(),
            less,
        }
    }

    /// Order given by a comparison closure; checked for strictness.
    pub fn from_relation(
        labels: Vec<String>,
        rel: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PathError> {
        let n = labels.len();
        let less = (0..n)
            .map(|a| (0..n).map(|b| rel(a, b)).collect())
            .collect();
        let p = FinitePoset { labels, less };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), PathError> {
        let n = self.len();
        for a in 0..n {
            if self.less[a][a] {
                return Err(PathError::NotStrict(format!("{a} < {a}")));
            }
            for b in 0..n {
                if !self.less[a][b] {
                    continue;
                }
                for c in 0..n {
                    if self.less[b][c] && !self.less[a][c] {
                        return Err(PathError::NotStrict(format!(
                            "{a} < {b} < {c} but not {a} < {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| {
                (0..n)
                    .filter(move |&b| self.less[a][b])
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Nodes strictly above `a`, ascending.
    pub fn above(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.less[a][b]).collect()
    }
}

/// Color per increasing `arity`-tuple. Colors are plain integers; in union
/// mode each color is read as a bit mask.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    pub arity: usize,
    pub colors: BTreeMap<Vec<usize>, u64>,
    pub palette_size: u64,
}

#[derive(Serialize, Deserialize)]
struct ColoringDoc {
    arity: usize,
    palette_size: u64,
    colors: Vec<ColorEntry>,
}

#[derive(Serialize, Deserialize)]
struct ColorEntry {
    window: Vec<usize>,
    color: u64,
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ColoringDoc {
            arity: self.arity,
            palette_size: self.palette_size,
            colors: self
                .colors
                .iter()
                .map(|(w, &c)| ColorEntry {
                    window: w.clone(),
                    color: c,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = ColoringDoc::deserialize(d)?;
        let mut colors = BTreeMap::new();
        for e in doc.colors {
            if e.window.len() != doc.arity {
                return Err(serde::de::Error::custom(format!(
                    "window {:?} does not have arity {}",
                    e.window, doc.arity
                )));
            }
            colors.insert(e.window, e.color);
        }
        Ok(Coloring {
            arity: doc.arity,
            colors,
            palette_size: doc.palette_size,
        })
    }
}

impl Coloring {
    pub fn new(arity: usize, palette_size: u64) -> Self {
        Coloring {
            arity,
            colors: BTreeMap::new(),
            palette_size,
        }
    }

    /// Color every increasing `arity`-tuple of `poset` by `f`.
    pub fn from_fn(
        poset: &FinitePoset,
        arity: usize,
        palette_size: u64,
        mut f: impl FnMut(&[usize]) -> u64,
    ) -> Self {
        let mut col = Coloring::new(arity, palette_size);
        for w in increasing_tuples(poset, arity) {
            let c = f(&w);
            col.colors.insert(w, c);
        }
        col
    }

    pub fn get(&self, window: &[usize]) -> Option<u64> {
        self.colors.get(window).copied()
    }
}

/// Every increasing tuple of the given length, in lexicographic order.
pub fn increasing_tuples(poset: &FinitePoset, len: usize) -> Vec<Vec<usize>> {
    fn go(p: &FinitePoset, len: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        let cands: Vec<usize> = match acc.last() {
            None => (0..p.len()).collect(),
            Some(&l) => p.above(l),
        };
        for c in cands {
            acc.push(c);
            go(p, len, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 {
        go(poset, len, &mut Vec::new(), &mut out);
    }
    out
}

/// How window colors are budgeted along a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "limit", rename_all = "snake_case")]
pub enum Palette {
    /// At most this many distinct colors.
    Count(usize),
    /// Colors are bit masks; the union of all of them has at most this many bits.
    Union(u32),
}

impl Palette {
    fn admits(&self, state: &PaletteState) -> bool {
        match (self, state) {
            (Palette::Count(c), PaletteState::Seen(v)) => v.len() <= *c,
            (Palette::Union(c), PaletteState::Mask(m)) => m.count_ones() <= *c,
            _ => unreachable!("state matches mode"),
        }
    }

    fn empty(&self) -> PaletteState {
        match self {
            Palette::Count(_) => PaletteState::Seen(Vec::new()),
            Palette::Union(_) => PaletteState::Mask(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum PaletteState {
    Seen(Vec<u64>),
    Mask(u64),
}

impl PaletteState {
    fn add(&self, color: u64) -> PaletteState {
        match self {
            PaletteState::Seen(v) => match v.binary_search(&color) {
                Ok(_) => self.clone(),
                Err(i) => {
                    let mut w = v.clone();
                    w.insert(i, color);
                    PaletteState::Seen(w)
                }
            },
            PaletteState::Mask(m) => PaletteState::Mask(m | color),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub path: Option<Vec<usize>>,
    /// Window colors along the path, when one was found.
    pub window_colors: Vec<u64>,
    pub nodes_visited: u64,
}

struct Search<'a> {
    poset: &'a FinitePoset,
    col: &'a Coloring,
    length: usize,
    palette: Palette,
    budget: u64,
    visited: &'a AtomicU64,
    dead: HashSet<(usize, Vec<usize>, PaletteState)>,
}

impl Search<'_> {
    fn tick(&self) -> Result<(), PathError> {
        if self.visited.fetch_add(1, Ordering::Relaxed) + 1 > self.budget {
            return Err(PathError::Budget(self.budget));
        }
        Ok(())
    }

    fn go(&mut self, path: &mut Vec<usize>, state: PaletteState) -> Result<bool, PathError> {
        self.tick()?;
        if path.len() == self.length {
            return Ok(true);
        }
        let k = self.col.arity;
        let tail_len = (k - 1).max(1).min(path.len());
        let key = (
            path.len(),
            path[path.len() - tail_len..].to_vec(),
            state.clone(),
        );
        if self.dead.contains(&key) {
            return Ok(false);
        }
        let cands = match path.last() {
            None => (0..self.poset.len()).collect(),
            Some(&l) => self.poset.above(l),
        };
        for c in cands {
            path.push(c);
            let next = if path.len() >= k {
                let w = &path[path.len() - k..];
                match self.col.get(w) {
                    Some(color) => state.add(color),
                    None => return Err(PathError::Uncolored(w.to_vec())),
                }
            } else {
                state.clone()
            };
            if self.palette.admits(&next) && self.go(path, next)? {
                return Ok(true);
            }
            path.pop();
        }
        self.dead.insert(key);
        Ok(false)
    }
}

/// Default node budget for path searches.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Lexicographically first increasing path of `length` nodes whose window
/// colors fit `palette`, or `None` when exhaustive search finds none.
pub fn find_bounded_path(
    poset: &FinitePoset,
    col: &Coloring,
    length: usize,
    palette: Palette,
    budget: u64,
) -> Result<PathReport, PathError> {
    find_bounded_path_par(poset, col, length, palette, budget, 1)
}

/// As [`find_bounded_path`], splitting root nodes across `jobs` threads.
/// The reported path is still the lexicographically first one.
pub fn find_bounded_path_par(
    poset: &FinitePoset,
    col: &Coloring,
    length: usize,
    palette: Palette,
    budget: u64,
    jobs: usize,
) -> Result<PathReport, PathError> {
    let roots: Vec<usize> = (0..poset.len()).collect();
    find_bounded_path_from(poset, col, length, palette, budget, jobs, &roots)
}

/// As [`find_bounded_path_par`], but paths may only start at `roots`.
pub fn find_bounded_path_from(
    poset: &FinitePoset,
    col: &Coloring,
    length: usize,
    palette: Palette,
    budget: u64,
    jobs: usize,
    roots: &[usize],
) -> Result<PathReport, PathError> {
    if length < col.arity || col.arity == 0 {
        return Err(PathError::TooShort {
            length,
            arity: col.arity,
        });
    }
    let visited = AtomicU64::new(0);
    let roots: Vec<usize> = roots.iter().copied().filter(|&r| r < poset.len()).collect();
    let run_root = |r: usize| -> Result<Option<Vec<usize>>, PathError> {
        let mut s = Search {
            poset,
            col,
            length,
            palette,
            budget,
            visited: &visited,
            dead: HashSet::new(),
        };
        let mut path = vec![r];
        let start = if col.arity == 1 {
            let c = col
                .get(&path)
                .ok_or_else(|| PathError::Uncolored(path.clone()))?;
            palette.empty().add(c)
        } else {
            palette.empty()
        };
        if !palette.admits(&start) {
            return Ok(None);
        }
        Ok(s.go(&mut path, start)?.then_some(path))
    };
    let jobs = jobs.max(1);
    let results: Vec<Result<Option<Vec<usize>>, PathError>> = if jobs == 1 {
        let mut out = Vec::new();
        for &r in &roots {
            let res = run_root(r);
            let stop = !matches!(res, Ok(None));
            out.push(res);
            if stop {
                break;
            }
        }
        out
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        type Slot = std::sync::Mutex<Option<Result<Option<Vec<usize>>, PathError>>>;
        let slots: Vec<Slot> = roots.iter().map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|sc| {
            for _ in 0..jobs {
                sc.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= roots.len() {
                        break;
                    }
                    *slots[i].lock().unwrap() = Some(run_root(roots[i]));
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().unwrap().expect("every root ran"))
            .collect()
    };
    let nodes_visited = visited.load(Ordering::Relaxed);
    for r in results {
        if let Some(path) = r? {
            let window_colors = path
                .windows(col.arity)
                .map(|w| col.get(w).expect("colored during search"))
                .collect();
            return Ok(PathReport {
                path: Some(path),
                window_colors,
                nodes_visited,
            });
        }
    }
    Ok(PathReport {
        path: None,
        window_colors: Vec::new(),
        nodes_visited,
    })
}

/// Finite eventual domination: `f < g` iff `g(n) - f(n) >= gap` for every
/// `n` in `[horizon / 2, horizon)`. A gap below 1 is raised to 1 so the
/// relation stays strict.
pub fn domination_poset(
    seqs: &[Vec<i64>],
    horizon: usize,
    gap: i64,
) -> Result<FinitePoset, PathError> {
    let gap = gap.max(1);
    for (i, s) in seqs.iter().enumerate() {
        if s.len() < horizon {
            return Err(PathError::NotStrict(format!(
                "sequence {i} shorter than horizon"
            )));
        }
    }
    FinitePoset::from_relation((0..seqs.len()).map(|i| i.to_string()).collect(), |a, b| {
        (horizon / 2..horizon).all(|n| seqs[b][n] - seqs[a][n] >= gap)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_coloring_on_chain() {
        let p = FinitePoset::chain(10);
        let col = Coloring::from_fn(&p, 2, 1, |_| 0);
        let r = find_bounded_path(&p, &col, 10, Palette::Count(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.path, Some((0..10).collect()));
    }

    #[test]
    fn rooted_search() {
        let p = FinitePoset::chain(6);
        // only windows starting at node 0 are expensive
        let col = Coloring::from_fn(&p, 2, 3, |w| if w[0] == 0 { 2 } else { 1 });
        let free = find_bounded_path(&p, &col, 3, Palette::Count(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(free.path, Some(vec![1, 2, 3]));
        let rooted =
            find_bounded_path_from(&p, &col, 3, Palette::Count(1), DEFAULT_BUDGET, 2, &[2, 3])
                .unwrap();
        assert_eq!(rooted.path, Some(vec![2, 3, 4]));
        let none = find_bounded_path_from(&p, &col, 3, Palette::Count(1), DEFAULT_BUDGET, 1, &[4])
            .unwrap();
        assert_eq!(none.path, None);
    }

    #[test]
    fn rainbow_has_no_cheap_path() {
        let p = FinitePoset::chain(10);
        let mut next = 0;
        let col = Coloring::from_fn(&p, 2, 100, |_| {
            next += 1;
            next
        });
        let r = find_bounded_path(&p, &col, 4, Palette::Count(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.path, None);
        let r3 = find_bounded_path(&p, &col, 4, Palette::Count(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(r3.path, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn union_mode_counts_bits() {
        let p = FinitePoset::chain(5);
        let col = Coloring::from_fn(&p, 2, 8, |w| 1 << (w[0] % 3));
        assert!(
            find_bounded_path(&p, &col, 4, Palette::Union(2), DEFAULT_BUDGET)
                .unwrap()
                .path
                .is_some()
        );
        assert!(
            find_bounded_path(&p, &col, 5, Palette::Union(1), DEFAULT_BUDGET)
                .unwrap()
                .path
                .is_none()
        );
    }

    #[test]
    fn budget_is_enforced() {
        let p = FinitePoset::chain(12);
        let mut next = 0;
        let col = Coloring::from_fn(&p, 2, 100, |_| {
            next += 1;
            next
        });
        assert_eq!(
            find_bounded_path(&p, &col, 6, Palette::Count(2), 50),
            Err(PathError::Budget(50))
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let p = FinitePoset::from_relation((0..9).map(|i| i.to_string()).collect(), |a, b| {
            a < b && (a % 3 != b % 3 || a + 3 <= b)
        })
        .unwrap();
        let col = Coloring::from_fn(&p, 2, 4, |w| ((w[0] * 7 + w[1] * 3) % 4) as u64);
        for len in 2..6 {
            for c in 1..4 {
                let s =
                    find_bounded_path(&p, &col, len, Palette::Count(c), DEFAULT_BUDGET).unwrap();
                let q = find_bounded_path_par(&p, &col, len, Palette::Count(c), DEFAULT_BUDGET, 4)
                    .unwrap();
                assert_eq!(s.path, q.path);
            }
        }
    }

    #[test]
    fn domination_examples() {
        let f: Vec<i64> = (0..16).collect();
        let g: Vec<i64> = (0..16).map(|n| 2 * n).collect();
        let p = domination_poset(&[f.clone(), g, f], 16, 4).unwrap();
        assert!(p.less(0, 1));
        assert!(!p.less(1, 0));
        assert!(!p.less(0, 2) && !p.less(2, 0));
    }

    #[test]
    fn rejects_non_transitive_pairs() {
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        assert!(FinitePoset::new(labels.clone(), &[(0, 1), (1, 2)]).is_err());
        assert!(FinitePoset::new(labels.clone(), &[(0, 0)]).is_err());
        assert!(FinitePoset::new(labels, &[(0, 1), (1, 2), (0, 2)]).is_ok());
    }

    #[test]
    fn coloring_json_roundtrip() {
        let p = FinitePoset::chain(3);
        let col = Coloring::from_fn(&p, 2, 3, |w| w[1] as u64);
        let j = serde_json::to_string(&col).unwrap();
        assert_eq!(serde_json::from_str::<Coloring>(&j).unwrap(), col);
        let pj = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<FinitePoset>(&pj).unwrap(), p);
    }
}
