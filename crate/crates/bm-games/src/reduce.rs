//! From a Markov k-tactic to a plain k-tactic through a disjoint
//! splitting scheme.
//!
//! The plain tactic reads the inning off the window: in a play against it,
//! each ONE move lies in the split of the previous one whose index is one
//! more than that move's inning, so the indices along the window reveal
//! where the window starts.

use crate::error::BmError;
use crate::play::{BmEnd, BmTactic, BmTranscript};
use crate::space::BmSpace;
use std::sync::Arc;

/// `split(u, m)` for `m = 1, 2, ...` lists pairwise disjoint nonempty opens
/// inside `u`. `None` marks an index past a truncated space's reach.
pub trait RefinementScheme: Send + Sync {
    type Space: BmSpace;

    fn space(&self) -> &Self::Space;
    fn split(
        &self,
        u: &<Self::Space as BmSpace>::Open,
        m: usize,
    ) -> Option<<Self::Space as BmSpace>::Open>;
    /// Largest index ever worth trying.
    fn index_bound(&self) -> usize;

    /// The index `m` with `inner ⊆ split(outer, m)`, if there is one.
    fn locate(
        &self,
        outer: &<Self::Space as BmSpace>::Open,
        inner: &<Self::Space as BmSpace>::Open,
    ) -> Result<Option<usize>, BmError> {
        let sp = self.space();
        let hits: Vec<usize> = (1..=self.index_bound())
            .filter(|&m| self.split(outer, m).is_some_and(|j| sp.subset(inner, &j)))
            .collect();
        match hits.len() {
            0 => Ok(None),
            1 => Ok(Some(hits[0])),
            _ => Err(BmError::Ambiguous(hits)),
        }
    }
}

/// Check nonemptiness, containment, and pairwise disjointness of the splits
/// of each sample up to `bound`. Splits past the truncation are skipped.
pub fn validate_scheme<R: RefinementScheme>(
    scheme: &R,
    samples: &[<R::Space as BmSpace>::Open],
    bound: usize,
) -> Result<(), BmError> {
    let sp = scheme.space();
    for u in samples {
        let parts: Vec<(usize, _)> = (1..=bound)
            .filter_map(|m| scheme.split(u, m).map(|j| (m, j)))
            .collect();
        for (i, (m, j)) in parts.iter().enumerate() {
            if sp.is_empty(j) || !sp.subset(j, u) {
                return Err(BmError::BadScheme(format!(
                    "split {m} of {u:?} is empty or leaves it"
                )));
            }
            if let Some((m2, _)) = parts[i + 1..]
                .iter()
                .find(|(_, j2)| !sp.is_empty(&sp.meet(j, j2)))
            {
                return Err(BmError::BadScheme(format!(
                    "splits {m} and {m2} of {u:?} overlap"
                )));
            }
        }
    }
    Ok(())
}

pub struct ReducedTactic<R: RefinementScheme> {
    markov: Arc<dyn BmTactic<<R::Space as BmSpace>::Open>>,
    scheme: R,
    k: usize,
}

pub fn markov_to_plain<R: RefinementScheme>(
    markov: Arc<dyn BmTactic<<R::Space as BmSpace>::Open>>,
    scheme: R,
) -> Result<ReducedTactic<R>, BmError> {
    let k = markov.window();
    if k == 0 {
        return Err(BmError::Contract("window must be at least 1".into()));
    }
    Ok(ReducedTactic { markov, scheme, k })
}

impl<R: RefinementScheme> ReducedTactic<R> {
    fn split(
        &self,
        u: &<R::Space as BmSpace>::Open,
        m: usize,
    ) -> Result<<R::Space as BmSpace>::Open, BmError> {
        self.scheme
            .split(u, m)
            .ok_or_else(|| BmError::Horizon(format!("split {m} of {u:?}")))
    }

    /// Start offset `l` of the window, when the nesting pattern fits.
    pub fn offset(&self, window: &[<R::Space as BmSpace>::Open]) -> Result<Option<usize>, BmError> {
        let mut offset = None;
        for (i, pair) in window.windows(2).enumerate() {
            // pair i (0-based) needs index l + i + 2
            let Some(m) = self.scheme.locate(&pair[0], &pair[1])? else {
                return Ok(None);
            };
            let Some(l) = m.checked_sub(i + 2) else {
                return Ok(None);
            };
            if offset.is_some_and(|o| o != l) {
                return Ok(None);
            }
            offset = Some(l);
        }
        Ok(offset)
    }
}

impl<R: RefinementScheme> BmTactic<<R::Space as BmSpace>::Open> for ReducedTactic<R> {
    fn window(&self) -> usize {
        self.k
    }

    fn respond(
        &self,
        window: &[<R::Space as BmSpace>::Open],
        _: usize,
    ) -> Result<<R::Space as BmSpace>::Open, BmError> {
        match window.len() {
            0 => Err(BmError::Contract("empty window".into())),
            1 => self.markov.respond(&[self.split(&window[0], 2)?], 1),
            j => match self.offset(window)? {
                Some(l) => {
                    let simulated = window
                        .iter()
                        .enumerate()
                        .map(|(i, u)| self.split(u, l + i + 2))
                        .collect::<Result<Vec<_>, _>>()?;
                    self.markov.respond(&simulated, l + j)
                }
                None => self.respond(&window[j - 1..], 0),
            },
        }
    }

    fn label(&self) -> String {
        format!("plain<{}>", self.markov.label())
    }
}

/// Per-inning check of the embedding: with `S_n = split(O_n, n + 1)`, TWO's
/// answer at inning `j` is the Markov tactic on the last `k` of the
/// `S`-sequence at inning `j`, and `O_j ⊇ S_j ⊇ T_j ⊇ O_(j+1)`.
pub fn embedding_violations<R: RefinementScheme>(
    scheme: &R,
    markov: &dyn BmTactic<<R::Space as BmSpace>::Open>,
    tr: &BmTranscript<<R::Space as BmSpace>::Open>,
) -> Vec<String> {
    let sp = scheme.space();
    let k = markov.window();
    let mut out = Vec::new();
    if matches!(tr.end, BmEnd::TwoFault { .. } | BmEnd::OneFault { .. }) {
        out.push(format!("play ended with {:?}", tr.end));
    }
    let mut s_seq = Vec::new();
    for (idx, inn) in tr.innings.iter().enumerate() {
        let j = idx + 1;
        let Some(s) = scheme.split(&inn.one, j + 1) else {
            break;
        };
        s_seq.push(s.clone());
        let Some(t) = &inn.two else { break };
        if !sp.subset(&s, &inn.one) {
            out.push(format!("inning {j}: S not inside O"));
        }
        if !sp.subset(t, &s) {
            out.push(format!("inning {j}: T not inside S"));
        }
        if let Some(next) = tr.innings.get(idx + 1) {
            if !sp.subset(&next.one, t) {
                out.push(format!("inning {}: O not inside the previous T", j + 1));
            }
        }
        match markov.respond(&s_seq[s_seq.len().saturating_sub(k)..], j) {
            Ok(expected) if expected == *t => {}
            Ok(expected) => out.push(format!(
                "inning {j}: T = {t:?} but F(S, {j}) = {expected:?}"
            )),
            Err(e) => out.push(format!("inning {j}: F fails on the S-window: {e}")),
        }
    }
    out
}
