//! Finite graded posets given by their Hasse diagrams.
//!
//! A [`GradedPoset`] is the board on which pinball is played and also the
//! index set for restriction vectors. Elements are addressed by dense `usize`
//! indices internally and by opaque string ids at the edges of the API.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the number of elements of a poset.
pub const MAX_POSET_SIZE: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("unknown element id `{0}`")]
    UnknownId(String),
    #[error("cover ({upper}, {lower}) violates the rank function: rank {upper_rank} vs {lower_rank}")]
    RankViolation {
        upper: String,
        lower: String,
        upper_rank: u32,
        lower_rank: u32,
    },
    #[error("cover relation contains a cycle")]
    CycleDetected,
    #[error("poset has {0} elements, above the cap of {MAX_POSET_SIZE}")]
    TooLarge(usize),
}

/// Fixed-size bit set used for reachability rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite ranked partial order with explicit cover relations.
#[derive(Clone)]
pub struct GradedPoset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    rank: Vec<u32>,
    /// Covers in the order they were supplied, as (upper, lower).
    covers: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    /// `below[i]` holds every `j` with `j <= i`.
    below: Vec<BitSet>,
}

impl fmt::Debug for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedPoset")
            .field("len", &self.len())
            .field("covers", &self.covers.len())
            .finish()
    }
}

impl PartialEq for GradedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.rank == other.rank && self.covers == other.covers
    }
}

impl Eq for GradedPoset {}

impl GradedPoset {
    /// Builds and validates a poset from `(id, rank)` pairs and `(upper, lower)` covers.
    pub fn new<S: AsRef<str>>(
        elements: impl IntoIterator<Item = (S, u32)>,
        covers: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let mut ids = Vec::new();
        let mut index = HashMap::new();
        let mut rank = Vec::new();
        for (id, r) in elements {
            let id = id.as_ref().to_string();
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(PosetError::DuplicateId(id));
            }
            ids.push(id);
            rank.push(r);
        }
        if ids.len() > MAX_POSET_SIZE {
            return Err(PosetError::TooLarge(ids.len()));
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PosetError::UnknownId(s.to_string()))
        };
        let mut idx_covers = Vec::new();
        for (u, l) in covers {
            let (u, l) = (lookup(u.as_ref())?, lookup(l.as_ref())?);
            idx_covers.push((u, l));
        }
        Self::from_indexed(ids, rank, idx_covers)
    }

    /// Same as [`GradedPoset::new`] but with covers already given as indices.
    pub fn from_indexed(
        ids: Vec<String>,
        rank: Vec<u32>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        let n = ids.len();
        if n > MAX_POSET_SIZE {
            return Err(PosetError::TooLarge(n));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(PosetError::DuplicateId(id.clone()));
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for &(u, l) in &covers {
            if u >= n {
                return Err(PosetError::UnknownId(u.to_string()));
            }
            if l >= n {
                return Err(PosetError::UnknownId(l.to_string()));
            }
            if rank[u] != rank[l] + 1 {
                return Err(PosetError::RankViolation {
                    upper: ids[u].clone(),
                    lower: ids[l].clone(),
                    upper_rank: rank[u],
                    lower_rank: rank[l],
                });
            }
            lower_covers[u].push(l);
            upper_covers[l].push(u);
        }
        for v in lower_covers.iter_mut().chain(upper_covers.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }

        // Kahn's algorithm from the bottom; every element must be reached.
        let mut pending: Vec<usize> = lower_covers.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
        let mut below: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        let mut seen = 0;
        while let Some(i) = queue.pop_front() {
            seen += 1;
            below[i].insert(i);
            for &u in &upper_covers[i] {
                let row = below[i].clone();
                below[u].union_with(&row);
                pending[u] -= 1;
                if pending[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
        if seen != n {
            return Err(PosetError::CycleDetected);
        }

        Ok(Self {
            ids,
            index,
            rank,
            covers,
            lower_covers,
            upper_covers,
            below,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownId(id.to_string()))
    }

    pub fn rank(&self, i: usize) -> u32 {
        self.rank[i]
    }

    pub fn max_rank(&self) -> u32 {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// Elements covered by `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Elements covering `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, upper: usize, lower: usize) -> bool {
        self.lower_covers[upper].binary_search(&lower).is_ok()
    }

    /// `a <= b` in the reflexive-transitive closure of the covers.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn leq_ids(&self, a: &str, b: &str) -> Result<bool, PosetError> {
        Ok(self.leq(self.index_of(a)?, self.index_of(b)?))
    }

    /// The principal order ideal `{j : j <= i}`.
    pub fn principal_ideal(&self, i: usize) -> ElementSubset {
        ElementSubset::from_indices(self.below[i].iter())
    }

    /// The principal order filter `{j : i <= j}`.
    pub fn principal_filter(&self, i: usize) -> ElementSubset {
        ElementSubset::from_indices((0..self.len()).filter(|&j| self.leq(i, j)))
    }

    /// Orders `subset` by `(rank, id)`. Ranks strictly increase along the
    /// order, so this always refines the induced partial order.
    pub fn linear_extension(&self, subset: &ElementSubset) -> Vec<usize> {
        let mut out: Vec<usize> = subset.iter().collect();
        out.sort_by(|&a, &b| {
            (self.rank[a], &self.ids[a]).cmp(&(self.rank[b], &self.ids[b]))
        });
        out
    }

    /// Whether `order` lists distinct elements and never puts `b` before `a`
    /// when `a < b`.
    pub fn is_compatible_order(&self, order: &[usize]) -> bool {
        let mut seen = BTreeSet::new();
        if !order.iter().all(|&i| seen.insert(i)) {
            return false;
        }
        order
            .iter()
            .enumerate()
            .all(|(p, &a)| order[..p].iter().all(|&b| !self.leq(a, b) || a == b))
    }

    /// True iff every element of `subset` has its whole principal ideal in `subset`.
    pub fn is_union_of_principal_ideals(&self, subset: &ElementSubset) -> bool {
        subset
            .iter()
            .all(|i| self.below[i].iter().all(|j| subset.contains(j)))
    }

    /// Minimal elements of `subset` in the induced order.
    pub fn minimal_elements(&self, subset: &ElementSubset) -> Vec<usize> {
        subset
            .iter()
            .filter(|&i| !subset.iter().any(|j| j != i && self.leq(j, i)))
            .collect()
    }

    pub fn subset_from_ids<S: AsRef<str>>(
        &self,
        ids: impl IntoIterator<Item = S>,
    ) -> Result<ElementSubset, PosetError> {
        ids.into_iter()
            .map(|s| self.index_of(s.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(|members| ElementSubset { members })
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self
                .ids
                .iter()
                .zip(&self.rank)
                .map(|(id, &rank)| ElementJson {
                    id: id.clone(),
                    rank,
                })
                .collect(),
            covers: self
                .covers
                .iter()
                .map(|&(u, l)| (self.ids[u].clone(), self.ids[l].clone()))
                .collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, PosetError> {
        Self::new(
            json.elements.iter().map(|e| (e.id.as_str(), e.rank)),
            json.covers.iter().map(|(u, l)| (u.as_str(), l.as_str())),
        )
    }
}

/// A set of poset elements, by index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ElementSubset {
    members: BTreeSet<usize>,
}

impl ElementSubset {
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self {
            members: indices.into_iter().collect(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.members.insert(i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &ElementSubset) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn ids<'a>(&'a self, poset: &'a GradedPoset) -> impl Iterator<Item = &'a str> + 'a {
        self.iter().map(move |i| poset.id(i))
    }
}

impl FromIterator<usize> for ElementSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

/// Wire form: `{"elements":[{"id":"e","rank":0}],"covers":[["s1","e"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<ElementJson>,
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub id: String,
    pub rank: u32,
}
