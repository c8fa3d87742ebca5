use serde::{Deserialize, Serialize};
use std::fmt;

/// An opaque ground-set element: an integer or a labeled pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Atom {
    Int(i64),
    Pair(String, i64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(i) => write!(f, "{i}"),
            Atom::Pair(l, i) => write!(f, "{l}:{i}"),
        }
    }
}

/// Ordered list of atoms. List position is the canonical order used for
/// every tie-break in the crate family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    pub elements: Vec<Atom>,
}

impl GroundSet {
    pub fn new(elements: Vec<Atom>) -> Self {
        GroundSet { elements }
    }

    /// Ground set {0, 1, ..., n-1} of integer atoms.
    pub fn range(n: usize) -> Self {
        GroundSet::new((0..n as i64).map(Atom::Int).collect())
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, a: &Atom) -> Option<usize> {
        self.elements.iter().position(|e| e == a)
    }

    pub fn atom(&self, i: usize) -> &Atom {
        &self.elements[i]
    }
}
