//! Object handles and canonically ordered object sets.
//!
//! Objects are addressed by their position in the universe, so the natural
//! order on [`Obj`] is the canonical object order used for every emitted set,
//! table and counterexample.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{NearnessError, Result};

/// Index of a perceptual object inside its universe.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Obj(pub u32);

impl Obj {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite set of objects stored as a bitset.
///
/// Trailing zero words are always trimmed so that structural equality is set
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ObjSet {
    words: Vec<u64>,
}

impl ObjSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: Obj) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    /// `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n as u32).map(Obj).collect()
    }

    pub fn insert(&mut self, x: Obj) -> bool {
        let (w, b) = (x.index() / 64, x.index() % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, x: Obj) -> bool {
        let (w, b) = (x.index() / 64, x.index() % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, x: Obj) -> bool {
        let (w, b) = (x.index() / 64, x.index() % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, word: 0, bits: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first(&self) -> Option<Obj> {
        self.iter().next()
    }

    pub fn union(&self, other: &ObjSet) -> ObjSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0))
            .collect();
        ObjSet { words }
    }

    pub fn intersection(&self, other: &ObjSet) -> ObjSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let mut s = ObjSet { words };
        s.trim();
        s
    }

    pub fn difference(&self, other: &ObjSet) -> ObjSet {
        let words = self
            .words
            .iter()
            .enumerate()
            .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
            .collect();
        let mut s = ObjSet { words };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &ObjSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &ObjSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &ObjSet) -> bool {
        !self.is_disjoint(other)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<Obj> for ObjSet {
    fn from_iter<I: IntoIterator<Item = Obj>>(iter: I) -> Self {
        let mut s = ObjSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl Extend<Obj> for ObjSet {
    fn extend<I: IntoIterator<Item = Obj>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

impl<'a> IntoIterator for &'a ObjSet {
    type Item = Obj;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

// Lexicographic on the ascending element sequence, so {o} < {o, r} < {r}.
impl Ord for ObjSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ObjSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ObjSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|o| o.0)).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = Obj;

    fn next(&mut self) -> Option<Obj> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros();
                self.bits &= self.bits - 1;
                return Some(Obj((self.word * 64) as u32 + b));
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.bits = self.words[self.word];
        }
    }
}

/// The ordered universe of perceptual object ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, Obj>,
}

impl Universe {
    pub fn new<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for id in ids {
            let id = id.into();
            let obj = Obj(names.len() as u32);
            if index.insert(id.clone(), obj).is_some() {
                return Err(NearnessError::DuplicateObject(id));
            }
            names.push(id);
        }
        if names.is_empty() {
            return Err(NearnessError::Invalid("universe must contain at least one object".into()));
        }
        Ok(Universe { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.names.len() as u32).map(Obj)
    }

    pub fn all(&self) -> ObjSet {
        ObjSet::full(self.len())
    }

    pub fn name(&self, x: Obj) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, id: &str) -> Result<Obj> {
        self.index.get(id).copied().ok_or_else(|| NearnessError::UnknownObject(id.to_string()))
    }

    pub fn contains(&self, x: Obj) -> bool {
        x.index() < self.names.len()
    }

    /// Resolves a list of ids into a set.
    pub fn set<S: AsRef<str>>(&self, ids: &[S]) -> Result<ObjSet> {
        ids.iter().map(|id| self.lookup(id.as_ref())).collect()
    }

    pub fn set_names(&self, set: &ObjSet) -> Vec<String> {
        set.iter().map(|x| self.name(x).to_string()).collect()
    }

    /// `{a, b, c}` rendering in canonical order.
    pub fn show_set(&self, set: &ObjSet) -> String {
        let parts: Vec<&str> = set.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}
