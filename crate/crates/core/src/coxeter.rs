//! Classical Weyl groups of types A, B, C and D.
//!
//! Elements are signed permutations of the ambient coordinates, composed as
//! functions: `(u * v)(i) = u(v(i))`. The simple roots are
//!
//! * `A_r`: `e_i - e_{i+1}` on `r + 1` coordinates,
//! * `B_n`: `e_i - e_{i+1}` and `e_n`,
//! * `C_n`: `e_i - e_{i+1}` and `2 e_n`,
//! * `D_n`: `e_i - e_{i+1}` and `e_{n-1} + e_n`.
//!
//! `B_n` and `C_n` share a group but not a root system, and Billey
//! restrictions see the difference.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::poset::{GradedPoset, PosetError};

/// Upper bound on `|W|` for enumeration.
pub const MAX_GROUP_ORDER: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("unsupported Lie type `{0}` (expected A, B, C or D)")]
    UnsupportedType(String),
    #[error("invalid rank {rank} for type {lie_type}")]
    InvalidRank { lie_type: LieType, rank: usize },
    #[error("group of order {0} exceeds the enumeration cap")]
    RankTooLarge(u64),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("malformed word `{0}`")]
    BadWord(String),
    #[error("malformed one-line notation `{0}`")]
    BadOneLine(String),
    #[error("`{0}` is not an element of this group")]
    NotInGroup(String),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            _ => Err(CoxeterError::UnsupportedType(s.to_string())),
        }
    }
}

/// A positive root, in ambient and simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub ambient: Vec<i32>,
    pub coeffs: Vec<i32>,
}

/// A root as `±` a positive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: usize,
    pub negative: bool,
}

impl SignedRoot {
    pub fn positive(index: usize) -> Self {
        Self {
            index,
            negative: false,
        }
    }

    pub fn negate(self) -> Self {
        Self {
            index: self.index,
            negative: !self.negative,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    rank: usize,
    dim: usize,
    simple: Vec<Vec<i32>>,
    positive: Vec<Root>,
    lookup: HashMap<Vec<i32>, SignedRoot>,
}

impl RootSystem {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self, CoxeterError> {
        let ok = match lie_type {
            LieType::A | LieType::B | LieType::C => rank >= 1,
            LieType::D => rank >= 2,
        };
        if !ok {
            return Err(CoxeterError::InvalidRank { lie_type, rank });
        }
        let dim = if lie_type == LieType::A { rank + 1 } else { rank };
        let unit = |i: usize| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        };
        let mut simple: Vec<Vec<i32>> = (0..rank.min(dim - 1))
            .map(|i| {
                let mut v = unit(i);
                v[i + 1] = -1;
                v
            })
            .collect();
        match lie_type {
            LieType::A => {}
            LieType::B => simple.push(unit(dim - 1)),
            LieType::C => simple.push(unit(dim - 1).iter().map(|x| 2 * x).collect()),
            LieType::D => {
                // D_n: the last two simple roots are e_{n-1} -/+ e_n.
                simple.truncate(rank - 1);
                let mut v = unit(dim - 2);
                v[dim - 1] = 1;
                simple.push(v);
            }
        }
        debug_assert_eq!(simple.len(), rank);

        let mut sys = Self {
            lie_type,
            rank,
            dim,
            simple,
            positive: Vec::new(),
            lookup: HashMap::new(),
        };

        // Closure of the simple roots under the simple reflections.
        let mut all: Vec<Vec<i32>> = sys.simple.clone();
        let mut queue: VecDeque<Vec<i32>> = all.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for a in sys.simple.clone() {
                let img = reflect(&a, &r);
                if !all.contains(&img) {
                    all.push(img.clone());
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Root> = all
            .into_iter()
            .map(|ambient| {
                let coeffs = sys.simple_coordinates(&ambient);
                Root { ambient, coeffs }
            })
            .filter(|r| r.coeffs.iter().all(|&c| c >= 0))
            .collect();
        // Height, then coefficients, so the simple roots come first in order.
        positive.sort_by(|a, b| {
            let ha: i32 = a.coeffs.iter().sum();
            let hb: i32 = b.coeffs.iter().sum();
            ha.cmp(&hb).then_with(|| b.coeffs.cmp(&a.coeffs))
        });
        for (i, r) in positive.iter().enumerate() {
            sys.lookup.insert(r.ambient.clone(), SignedRoot::positive(i));
            let neg: Vec<i32> = r.ambient.iter().map(|x| -x).collect();
            sys.lookup.insert(
                neg,
                SignedRoot {
                    index: i,
                    negative: true,
                },
            );
        }
        sys.positive = positive;
        Ok(sys)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of ambient coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simple_roots(&self) -> &[Vec<i32>] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Index of the positive root `alpha_i` (0-based `i`).
    pub fn simple_index(&self, i: usize) -> usize {
        self.lookup[&self.simple[i]].index
    }

    pub fn root_of(&self, ambient: &[i32]) -> Option<SignedRoot> {
        self.lookup.get(ambient).copied()
    }

    pub fn ambient(&self, r: SignedRoot) -> Vec<i32> {
        let v = &self.positive[r.index].ambient;
        if r.negative {
            v.iter().map(|x| -x).collect()
        } else {
            v.clone()
        }
    }

    pub fn coeffs(&self, r: SignedRoot) -> Vec<i32> {
        let v = &self.positive[r.index].coeffs;
        if r.negative {
            v.iter().map(|x| -x).collect()
        } else {
            v.clone()
        }
    }

    /// Signed root with the given simple-root coefficients.
    pub fn root_from_coeffs(&self, coeffs: &[i32]) -> Option<SignedRoot> {
        if coeffs.len() != self.rank {
            return None;
        }
        let mut v = vec![0; self.dim];
        for (c, a) in coeffs.iter().zip(&self.simple) {
            for (x, y) in v.iter_mut().zip(a) {
                *x += c * y;
            }
        }
        self.root_of(&v)
    }

    /// Coordinates of an ambient vector in the basis of simple roots.
    pub fn simple_coordinates(&self, v: &[i32]) -> Vec<i32> {
        let n = self.rank;
        let prefix: Vec<i32> = v
            .iter()
            .scan(0, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect();
        let mut c: Vec<i32> = prefix[..n.min(prefix.len())].to_vec();
        c.resize(n, 0);
        match self.lie_type {
            LieType::A | LieType::B => {}
            LieType::C => c[n - 1] = prefix[n - 1] / 2,
            LieType::D => {
                let s = if n >= 2 { prefix[n - 2] } else { 0 };
                c[n - 2] = (s - v[n - 1]) / 2;
                c[n - 1] = (s + v[n - 1]) / 2;
            }
        }
        c
    }

    /// Order of the Weyl group.
    pub fn group_order(&self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        let n = self.rank;
        match self.lie_type {
            LieType::A => fact(n + 1),
            LieType::B | LieType::C => (1u64 << n) * fact(n),
            LieType::D => (1u64 << (n - 1)) * fact(n),
        }
    }
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `s_a(v) = v - 2 (v, a) / (a, a) * a`.
fn reflect(a: &[i32], v: &[i32]) -> Vec<i32> {
    let k = 2 * dot(v, a) / dot(a, a);
    v.iter().zip(a).map(|(x, y)| x - k * y).collect()
}

/// A signed permutation in one-line form: entry `i` is `w(i + 1)`, with a
/// negative value meaning `e_{i+1} -> -e_{|w(i+1)|}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i8>);

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        Self((1..=dim as i8).collect())
    }

    pub fn from_one_line(entries: Vec<i8>) -> Result<Self, CoxeterError> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &x in &entries {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(CoxeterError::BadOneLine(format!("{entries:?}")));
            }
            seen[a - 1] = true;
        }
        Ok(Self(entries))
    }

    pub fn one_line(&self) -> &[i8] {
        &self.0
    }

    fn apply_index(&self, i: i8) -> i8 {
        let img = self.0[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -img
        } else {
            img
        }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement(other.0.iter().map(|&x| self.apply_index(x)).collect())
    }

    pub fn inverse(&self) -> GroupElement {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            let target = x.unsigned_abs() as usize - 1;
            let v = (i + 1) as i8;
            out[target] = if x < 0 { -v } else { v };
        }
        GroupElement(out)
    }

    pub fn act(&self, v: &[i32]) -> Vec<i32> {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let img = self.0[i];
            let j = img.unsigned_abs() as usize - 1;
            out[j] += if img < 0 { -x } else { x };
        }
        out
    }

    pub fn sign_flips(&self) -> usize {
        self.0.iter().filter(|&&x| x < 0).count()
    }

    /// Number of points `i` with `w(i) = i`.
    pub fn fixed_point_count(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &x)| x == (i + 1) as i8)
            .count()
    }

    /// Ambient linear map of a reflection in a root.
    fn reflection(root: &[i32]) -> GroupElement {
        let dim = root.len();
        let entries = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                let img = reflect(root, &e);
                let j = img.iter().position(|&x| x != 0).expect("nonzero image");
                let v = (j + 1) as i8;
                if img[j] < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        GroupElement(entries)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A word in the simple reflections, 1-based: `[2, 1]` is `s2.s1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = CoxeterError;

    /// Accepts `e`, `s2.s1.s3`, `s2s1s3` and `2.1.3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "e" || t.is_empty() {
            return Ok(Word(Vec::new()));
        }
        let bad = || CoxeterError::BadWord(s.to_string());
        let mut out = Vec::new();
        for part in t.split(['.', ' ', '*']).filter(|p| !p.is_empty()) {
            if part.contains('s') {
                for piece in part.split('s').skip(1) {
                    out.push(piece.parse::<usize>().map_err(|_| bad())?);
                }
                if !part.starts_with('s') {
                    return Err(bad());
                }
            } else {
                out.push(part.parse::<usize>().map_err(|_| bad())?);
            }
        }
        if out.contains(&0) {
            return Err(bad());
        }
        Ok(Word(out))
    }
}

/// Parses `[2,1,4,3]` or `2,1,4,3` or `2143`.
pub fn parse_one_line(s: &str) -> Result<Vec<i8>, CoxeterError> {
    let bad = || CoxeterError::BadOneLine(s.to_string());
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.contains(',') || t.contains(' ') {
        t.split([',', ' '])
            .filter(|p| !p.is_empty())
            .map(|p| p.trim().parse::<i8>().map_err(|_| bad()))
            .collect()
    } else {
        t.chars()
            .map(|c| c.to_digit(10).map(|d| d as i8).ok_or_else(bad))
            .collect()
    }
}

/// A fully enumerated Weyl group with length, multiplication and root tables.
///
/// Element indices are sorted by length (breadth-first from the identity), so
/// the identity is index 0 and every prefix of lengths is a prefix of indices.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    roots: RootSystem,
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, usize>,
    length: Vec<u32>,
    /// `right[w][i] = w * s_{i+1}`
    right: Vec<Vec<usize>>,
    /// `left[w][i] = s_{i+1} * w`
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Reflection `s_beta` for each positive root, as an element index.
    reflections: Vec<usize>,
}

impl WeylGroup {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self, CoxeterError> {
        let roots = RootSystem::new(lie_type, rank)?;
        let order = roots.group_order();
        if order > MAX_GROUP_ORDER {
            return Err(CoxeterError::RankTooLarge(order));
        }
        let gens: Vec<GroupElement> = roots
            .simple
            .iter()
            .map(|a| GroupElement::reflection(a))
            .collect();

        let mut elements = vec![GroupElement::identity(roots.dim)];
        let mut lookup = HashMap::from([(elements[0].clone(), 0usize)]);
        let mut length = vec![0u32];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head].clone();
            let mut row = Vec::with_capacity(rank);
            for g in &gens {
                let ws = w.compose(g);
                let idx = match lookup.get(&ws) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        lookup.insert(ws.clone(), i);
                        elements.push(ws);
                        length.push(length[head] + 1);
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }
        debug_assert_eq!(elements.len() as u64, order);

        let inverse: Vec<usize> = elements.iter().map(|w| lookup[&w.inverse()]).collect();
        let left = (0..elements.len())
            .map(|w| {
                (0..rank)
                    .map(|i| inverse[right[inverse[w]][i]])
                    .collect()
            })
            .collect();
        let reflections = roots
            .positive
            .iter()
            .map(|r| lookup[&GroupElement::reflection(&r.ambient)])
            .collect();

        Ok(Self {
            roots,
            elements,
            lookup,
            length,
            right,
            left,
            inverse,
            reflections,
        })
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, w: usize) -> &GroupElement {
        &self.elements[w]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn length(&self, w: usize) -> u32 {
        self.length[w]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// `w * s_i` for 1-based generator `i`.
    pub fn mul_simple_right(&self, w: usize, i: usize) -> usize {
        self.right[w][i - 1]
    }

    /// `s_i * w` for 1-based generator `i`.
    pub fn mul_simple_left(&self, i: usize, w: usize) -> usize {
        self.left[w][i - 1]
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.lookup[&self.elements[u].compose(&self.elements[v])]
    }

    pub fn simple_reflection(&self, i: usize) -> usize {
        self.right[0][i - 1]
    }

    /// Reflection in the `k`-th positive root.
    pub fn reflection(&self, k: usize) -> usize {
        self.reflections[k]
    }

    pub fn from_word(&self, word: &Word) -> Result<usize, CoxeterError> {
        let mut w = 0;
        for &i in &word.0 {
            if i == 0 || i > self.rank() {
                return Err(CoxeterError::BadGenerator(i));
            }
            w = self.right[w][i - 1];
        }
        Ok(w)
    }

    /// Parses either a word (`s1.s2`, `e`) or a one-line form (`[2,1,3,4]`).
    pub fn parse(&self, s: &str) -> Result<usize, CoxeterError> {
        let t = s.trim();
        let bare_digits = t.len() == self.roots.dim && t.chars().all(|c| c.is_ascii_digit());
        if t.starts_with('[') || t.contains(',') || bare_digits {
            let g = GroupElement::from_one_line(parse_one_line(t)?)?;
            self.index_of(&g)
                .ok_or_else(|| CoxeterError::NotInGroup(t.to_string()))
        } else {
            self.from_word(&t.parse()?)
        }
    }

    /// Right descents `i` (1-based) with `l(w s_i) < l(w)`.
    pub fn descents(&self, w: usize) -> Vec<usize> {
        (1..=self.rank())
            .filter(|&i| self.length[self.right[w][i - 1]] < self.length[w])
            .collect()
    }

    /// Reduced word obtained by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self, w: usize) -> Word {
        let mut rev = Vec::with_capacity(self.length[w] as usize);
        let mut cur = w;
        while cur != 0 {
            let i = (1..=self.rank())
                .find(|&i| self.length[self.right[cur][i - 1]] < self.length[cur])
                .expect("non-identity element has a descent");
            rev.push(i);
            cur = self.right[cur][i - 1];
        }
        rev.reverse();
        Word(rev)
    }

    /// Every reduced word of `w`.
    pub fn all_reduced_words(&self, w: usize) -> Vec<Word> {
        if w == 0 {
            return vec![Word::default()];
        }
        let mut out = Vec::new();
        for i in self.descents(w) {
            for mut word in self.all_reduced_words(self.right[w][i - 1]) {
                word.0.push(i);
                out.push(word);
            }
        }
        out
    }

    pub fn label(&self, w: usize) -> String {
        self.reduced_word(w).to_string()
    }

    /// Inversion count `|{a > 0 : w(a) < 0}|`; agrees with the length table.
    pub fn inversion_count(&self, w: usize) -> usize {
        let g = &self.elements[w];
        self.roots
            .positive
            .iter()
            .filter(|r| self.roots.root_of(&g.act(&r.ambient)).is_some_and(|s| s.negative))
            .count()
    }

    pub fn act_on_root(&self, w: usize, root: &[i32]) -> Result<Vec<i32>, CoxeterError> {
        if self.roots.root_of(root).is_none() {
            return Err(CoxeterError::NotARoot(root.to_vec()));
        }
        Ok(self.elements[w].act(root))
    }

    pub fn act_signed_root(&self, w: usize, r: SignedRoot) -> SignedRoot {
        let img = self.elements[w].act(&self.roots.ambient(r));
        self.roots.root_of(&img).expect("Weyl group permutes roots")
    }

    /// Bruhat order via the descent recursion: for a right descent `s` of
    /// `w`, `u <= w` iff `us <= ws` when `us < u`, else `u <= ws`.
    pub fn bruhat_leq(&self, u: usize, w: usize) -> bool {
        let (mut u, mut w) = (u, w);
        loop {
            if self.length[u] > self.length[w] {
                return false;
            }
            if w == 0 {
                return u == 0;
            }
            if u == w {
                return true;
            }
            let i = (0..self.rank())
                .find(|&i| self.length[self.right[w][i]] < self.length[w])
                .expect("non-identity element has a descent");
            let us = self.right[u][i];
            if self.length[us] < self.length[u] {
                u = us;
            }
            w = self.right[w][i];
        }
    }

    /// Elements covered by `w` in Bruhat order.
    pub fn bruhat_lower_covers(&self, w: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .reflections
            .iter()
            .map(|&t| self.mul(w, t))
            .filter(|&u| self.length[u] + 1 == self.length[w])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Longest element of the parabolic subgroup generated by `J` (1-based).
    pub fn max_parabolic(&self, j: &[usize]) -> usize {
        let mut w = 0;
        loop {
            let next = j
                .iter()
                .map(|&i| self.right[w][i - 1])
                .find(|&ws| self.length[ws] > self.length[w]);
            match next {
                Some(ws) => w = ws,
                None => return w,
            }
        }
    }

    /// The Bruhat board: ids are reduced words, ranks are lengths. With
    /// `max_length`, only elements up to that length are kept; poset indices
    /// coincide with group indices either way.
    pub fn to_poset(&self, max_length: Option<u32>) -> Result<GradedPoset, PosetError> {
        let keep = self
            .length
            .iter()
            .take_while(|&&l| max_length.is_none_or(|m| l <= m))
            .count();
        let ids: Vec<String> = (0..keep).map(|w| self.label(w)).collect();
        let rank = self.length[..keep].to_vec();
        let mut covers = Vec::new();
        for w in 0..keep {
            for u in self.bruhat_lower_covers(w) {
                covers.push((w, u));
            }
        }
        GradedPoset::from_indexed(ids, rank, covers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> WeylGroup {
        WeylGroup::new(LieType::A, 3).unwrap()
    }

    fn el(g: &WeylGroup, s: &str) -> usize {
        g.parse(s).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(a3().order(), 24);
        assert_eq!(WeylGroup::new(LieType::B, 2).unwrap().order(), 8);
        assert_eq!(WeylGroup::new(LieType::C, 3).unwrap().order(), 48);
        assert_eq!(WeylGroup::new(LieType::D, 4).unwrap().order(), 192);
    }

    #[test]
    fn unsupported_type() {
        assert_eq!(
            "G".parse::<LieType>().unwrap_err(),
            CoxeterError::UnsupportedType("G".into())
        );
        assert!(matches!(
            WeylGroup::new(LieType::A, 12),
            Err(CoxeterError::RankTooLarge(_))
        ));
        assert!(WeylGroup::new(LieType::D, 1).is_err());
    }

    #[test]
    fn b2_positive_roots() {
        let r = RootSystem::new(LieType::B, 2).unwrap();
        let mut amb: Vec<Vec<i32>> = r.positive_roots().iter().map(|r| r.ambient.clone()).collect();
        amb.sort();
        assert_eq!(amb, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn root_action_examples() {
        let g = a3();
        let a1 = vec![1, -1, 0, 0];
        assert_eq!(g.act_on_root(0, &a1).unwrap(), a1);
        assert_eq!(g.act_on_root(el(&g, "s1"), &a1).unwrap(), vec![-1, 1, 0, 0]);
        assert_eq!(g.act_on_root(el(&g, "s2"), &a1).unwrap(), vec![1, 0, -1, 0]);
        assert!(g.act_on_root(0, &[1, 1, 0, 0]).is_err());
    }

    #[test]
    fn word_and_one_line_parsing() {
        let g = a3();
        assert_eq!(el(&g, "s1.s2"), el(&g, "[2,3,1,4]"));
        assert_eq!(el(&g, "s1s2"), el(&g, "s1.s2"));
        assert_eq!(el(&g, "e"), 0);
        assert_eq!(g.element(el(&g, "s3.s2.s1")).to_string(), "[4,1,2,3]");
        assert_eq!("s2.s1.s3.s2".parse::<Word>().unwrap().to_string(), "s2.s1.s3.s2");
        assert!("x1".parse::<Word>().is_err());
    }

    #[test]
    fn lengths_and_words() {
        let g = a3();
        assert_eq!(g.length(0), 0);
        assert!(g.reduced_word(0).is_empty());
        let w0 = g.max_parabolic(&[1, 2, 3]);
        assert_eq!(g.length(w0), 6);
        assert_eq!(g.element(w0).one_line(), &[4, 3, 2, 1]);
        for w in 0..g.order() {
            assert_eq!(g.length(w) as usize, g.inversion_count(w));
            let word = g.reduced_word(w);
            assert_eq!(word.len(), g.length(w) as usize);
            assert_eq!(g.from_word(&word).unwrap(), w);
        }
        // s_{n-1} ... s_i is reduced of length n - i.
        for i in 1..=3 {
            let word = Word((i..=3).rev().collect());
            assert_eq!(g.length(g.from_word(&word).unwrap()) as usize, 4 - i);
        }
    }

    #[test]
    fn parabolic_examples() {
        let g = a3();
        assert_eq!(g.max_parabolic(&[]), 0);
        assert_eq!(g.max_parabolic(&[1, 3]), el(&g, "s1.s3"));
    }

    #[test]
    fn bruhat_examples() {
        let g = a3();
        assert!(g.bruhat_leq(el(&g, "s1.s2"), el(&g, "s2.s1.s3.s2")));
        assert!(!g.bruhat_leq(el(&g, "s1"), el(&g, "s2")));
        assert!(!g.bruhat_leq(el(&g, "s1"), el(&g, "s3")));
        for w in 0..g.order() {
            assert!(g.bruhat_leq(0, w));
        }
    }

    #[test]
    fn board_shape() {
        let g = a3();
        let p = g.to_poset(None).unwrap();
        assert_eq!(p.len(), 24);
        assert_eq!(p.max_rank(), 6);
        let rank1: Vec<&str> = (0..24).filter(|&i| p.rank(i) == 1).map(|i| p.id(i)).collect();
        assert_eq!(rank1, ["s1", "s2", "s3"]);
        let b2 = WeylGroup::new(LieType::B, 2).unwrap().to_poset(None).unwrap();
        let mut hist = [0; 5];
        for i in 0..b2.len() {
            hist[b2.rank(i) as usize] += 1;
        }
        assert_eq!(hist, [1, 2, 2, 2, 1]);
        assert_eq!(g.to_poset(Some(1)).unwrap().len(), 4);
    }

    #[test]
    fn d_type_sign_parity() {
        let g = WeylGroup::new(LieType::D, 4).unwrap();
        for w in 0..g.order() {
            assert_eq!(g.element(w).sign_flips() % 2, 0);
        }
    }
}
