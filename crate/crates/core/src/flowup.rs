//! Free modules over `Q[t]` inside a product indexed by a poset: flow-ups,
//! triangularity, independence and triangular bases.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::WeylGroup;
use crate::poly::{PolyError, TPolynomial};
use crate::poset::GradedPoset;
use crate::zpoly::{integer_rows, ZPoly};

/// Search budget for [`find_triangular_order`].
pub const TRIANGULAR_ORDER_BUDGET: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowupError {
    #[error("vector {0} is zero")]
    ZeroVector(usize),
    #[error("vector {index} has {got} entries, expected {expected}")]
    LengthMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("the constructed vectors do not span the input")]
    NotSpanning,
    #[error("matching is not injective: two elements map to `{0}`")]
    NotInjective(String),
    #[error("`{0}` is not in the index set")]
    UnknownIndex(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finite poset of indices with its ambient ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPoset {
    labels: Vec<String>,
    rank: Vec<u32>,
    leq: Vec<Vec<bool>>,
}

impl IndexPoset {
    pub fn new(labels: Vec<String>, rank: Vec<u32>, leq: Vec<Vec<bool>>) -> Self {
        Self { labels, rank, leq }
    }

    /// `members` with the order and ranks induced from `p`.
    pub fn induced(p: &GradedPoset, members: &[usize]) -> Self {
        Self {
            labels: members.iter().map(|&i| p.id(i).to_string()).collect(),
            rank: members.iter().map(|&i| p.rank(i)).collect(),
            leq: members
                .iter()
                .map(|&a| members.iter().map(|&b| p.leq(a, b)).collect())
                .collect(),
        }
    }

    /// Group elements under Bruhat order, ranked by length.
    pub fn bruhat(g: &WeylGroup, members: &[usize]) -> Self {
        Self {
            labels: members.iter().map(|&w| g.label(w)).collect(),
            rank: members.iter().map(|&w| g.length(w)).collect(),
            leq: members
                .iter()
                .map(|&a| members.iter().map(|&b| g.bruhat_leq(a, b)).collect())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self, i: usize) -> u32 {
        self.rank[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        let mut seen = vec![false; self.len()];
        for &i in order {
            if i >= self.len() || seen[i] {
                return false;
            }
            if (0..self.len()).any(|j| j != i && self.leq[j][i] && !seen[j]) {
                return false;
            }
            seen[i] = true;
        }
        order.len() == self.len()
    }

    /// A linear extension ordered by rank, then label.
    pub fn default_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| (self.rank[a], &self.labels[a]).cmp(&(self.rank[b], &self.labels[b])));
        order
    }
}

/// An element of `Q[t]^I`, one entry per index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RestrictionVector(pub Vec<TPolynomial>);

impl RestrictionVector {
    pub fn zero(len: usize) -> Self {
        Self(vec![TPolynomial::zero(); len])
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self(rows.iter().map(|c| TPolynomial::from_ints(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(TPolynomial::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    fn axpy(&mut self, c: &TPolynomial, other: &RestrictionVector) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !y.is_zero() {
                *x = &*x - &(c * y);
            }
        }
    }

    pub fn scale(&self, c: &TPolynomial) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// First position in `order` with a nonzero entry.
    pub fn lead(&self, order: &[usize]) -> Option<usize> {
        order.iter().copied().find(|&i| !self.0[i].is_zero())
    }
}

fn check_lengths(set: &[RestrictionVector], len: usize) -> Result<(), FlowupError> {
    for (k, x) in set.iter().enumerate() {
        if x.len() != len {
            return Err(FlowupError::LengthMismatch {
                index: k,
                got: x.len(),
                expected: len,
            });
        }
    }
    Ok(())
}

/// `Some(min)` when the support has a unique minimum below all of it.
pub fn is_flowup(ip: &IndexPoset, x: &RestrictionVector) -> Result<Option<usize>, FlowupError> {
    let supp = x.support();
    if supp.is_empty() {
        return Err(FlowupError::ZeroVector(0));
    }
    Ok(supp
        .iter()
        .copied()
        .find(|&m| supp.iter().all(|&j| ip.leq(m, j))))
}

/// Indices of vectors that are not flow-ups, or share their minimum with
/// another vector of the set.
pub fn poset_ut_failures(ip: &IndexPoset, set: &[RestrictionVector]) -> Result<Vec<usize>, FlowupError> {
    check_lengths(set, ip.len())?;
    let mins = set
        .iter()
        .enumerate()
        .map(|(k, x)| is_flowup(ip, x).map_err(|_| FlowupError::ZeroVector(k)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((0..set.len())
        .filter(|&k| match mins[k] {
            None => true,
            Some(m) => mins.iter().enumerate().any(|(l, &o)| l != k && o == Some(m)),
        })
        .collect())
}

pub fn is_poset_upper_triangular(ip: &IndexPoset, set: &[RestrictionVector]) -> Result<bool, FlowupError> {
    Ok(poset_ut_failures(ip, set)?.is_empty())
}

/// Leading positions are pairwise distinct (and every vector has one).
pub fn is_total_order_upper_triangular(set: &[RestrictionVector], order: &[usize]) -> bool {
    let mut seen = HashSet::new();
    set.iter().all(|x| x.lead(order).is_some_and(|l| seen.insert(l)))
}

struct OrderSearch<'a> {
    ip: &'a IndexPoset,
    nonzero: Vec<Vec<bool>>,
    placed: Vec<bool>,
    resolved: Vec<bool>,
    order: Vec<usize>,
    failed: HashSet<Vec<bool>>,
    nodes: u64,
}

impl OrderSearch<'_> {
    /// Each unresolved vector can still get its own unplaced lead.
    fn hall_ok(&self) -> bool {
        let n = self.ip.len();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        fn augment(
            v: usize,
            nonzero: &[Vec<bool>],
            placed: &[bool],
            owner: &mut [Option<usize>],
            seen: &mut [bool],
        ) -> bool {
            for j in 0..placed.len() {
                if placed[j] || !nonzero[v][j] || seen[j] {
                    continue;
                }
                seen[j] = true;
                if owner[j].is_none_or(|o| augment(o, nonzero, placed, owner, seen)) {
                    owner[j] = Some(v);
                    return true;
                }
            }
            false
        }
        (0..self.resolved.len()).filter(|&v| !self.resolved[v]).all(|v| {
            let mut seen = vec![false; n];
            augment(v, &self.nonzero, &self.placed, &mut owner, &mut seen)
        })
    }

    fn run(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > TRIANGULAR_ORDER_BUDGET {
            return None;
        }
        let n = self.ip.len();
        if self.order.len() == n {
            return Some(self.resolved.iter().all(|&r| r));
        }
        if self.failed.contains(&self.placed) || !self.hall_ok() {
            return Some(false);
        }
        let mut candidates: Vec<(usize, usize)> = (0..n)
            .filter(|&j| !self.placed[j])
            .filter(|&j| (0..n).all(|i| i == j || !self.ip.leq(i, j) || self.placed[i]))
            .map(|j| {
                let hits = (0..self.resolved.len())
                    .filter(|&v| !self.resolved[v] && self.nonzero[v][j])
                    .count();
                (hits, j)
            })
            .filter(|&(hits, _)| hits <= 1)
            .collect();
        candidates.sort_by_key(|&(hits, j)| (std::cmp::Reverse(hits), self.ip.rank(j), j));
        for (_, j) in candidates {
            let hit = (0..self.resolved.len()).find(|&v| !self.resolved[v] && self.nonzero[v][j]);
            self.placed[j] = true;
            self.order.push(j);
            if let Some(v) = hit {
                self.resolved[v] = true;
            }
            match self.run() {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            if let Some(v) = hit {
                self.resolved[v] = false;
            }
            self.order.pop();
            self.placed[j] = false;
        }
        self.failed.insert(self.placed.clone());
        Some(false)
    }
}

/// A linear extension of `ip` in which `set` is triangular, if one exists
/// and the search stays within budget.
pub fn find_triangular_order(ip: &IndexPoset, set: &[RestrictionVector]) -> Result<Option<Vec<usize>>, FlowupError> {
    check_lengths(set, ip.len())?;
    if let Some(k) = set.iter().position(RestrictionVector::is_zero) {
        return Err(FlowupError::ZeroVector(k));
    }
    let mut search = OrderSearch {
        ip,
        nonzero: set.iter().map(|x| x.0.iter().map(|p| !p.is_zero()).collect()).collect(),
        placed: vec![false; ip.len()],
        resolved: vec![false; set.len()],
        order: Vec::new(),
        failed: HashSet::new(),
        nodes: 0,
    };
    Ok(match search.run() {
        Some(true) => Some(search.order),
        _ => None,
    })
}


/// Pivot columns (in `order`) and a set of rows whose minor on them is
/// nonsingular, by Bareiss elimination over `Z[t]`.
fn rank_profile(set: &[RestrictionVector], order: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let scaled = integer_rows(set.iter().map(|x| x.0.iter().collect()));
    let mut rows: Vec<(usize, Vec<ZPoly>)> = scaled.into_iter().enumerate().collect();
    let mut cols = Vec::new();
    let mut prev = ZPoly::one();
    let mut r = 0;
    for &col in order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].1[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r].1;
        let a = &pivot[col];
        for (_, row) in tail.iter_mut() {
            let b = row[col].clone();
            for (x, y) in row.iter_mut().zip(pivot) {
                *x = x.cross(a, y, &b).exact_div(&prev).expect("exact Bareiss step");
            }
        }
        prev = a.clone();
        cols.push(col);
        r += 1;
    }
    let used = rows[..r].iter().map(|(k, _)| *k).collect();
    (cols, used)
}

/// Rank over the fraction field `Q(t)`.
pub fn rank(set: &[RestrictionVector]) -> usize {
    let Some(width) = set.first().map(RestrictionVector::len) else {
        return 0;
    };
    let order: Vec<usize> = (0..width).collect();
    rank_profile(set, &order).0.len()
}

pub fn linearly_independent(set: &[RestrictionVector]) -> bool {
    rank(set) == set.len()
}

/// Same span over `Q(t)`.
pub fn span_equal_over_fraction_field(a: &[RestrictionVector], b: &[RestrictionVector]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let both: Vec<RestrictionVector> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both) == ra
}

/// A triangular basis vector with its pivot position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pivot {
    pub position: usize,
    pub vector: RestrictionVector,
}

/// `a * x + b * y` entrywise.
fn combine(a: &TPolynomial, x: &[TPolynomial], b: &TPolynomial, y: &[TPolynomial]) -> Vec<TPolynomial> {
    x.iter().zip(y).map(|(u, v)| &(a * u) + &(b * v)).collect()
}

/// Subtracts `q * y` from `x`.
fn sub_multiple(x: &mut [TPolynomial], q: &TPolynomial, y: &[TPolynomial]) {
    for (u, v) in x.iter_mut().zip(y) {
        if !v.is_zero() {
            *u = &*u - &(q * v);
        }
    }
}

fn make_monic(row: &mut [TPolynomial], col: usize) {
    let lead = row[col].leading().expect("nonzero pivot").clone();
    if !lead.is_one() {
        let inv = BigRational::one() / lead;
        for x in row.iter_mut() {
            *x = x.scale(&inv);
        }
    }
}

/// Reduced echelon basis over `Q[t]`, built one generator at a time. Every
/// slot is kept reduced against the slots after it, so the basis stays the
/// canonical form of the module generated so far.
struct Echelon<'a> {
    order: &'a [usize],
    slots: Vec<Option<Vec<TPolynomial>>>,
}

impl<'a> Echelon<'a> {
    fn new(order: &'a [usize]) -> Self {
        Self { order, slots: vec![None; order.len()] }
    }

    /// Reduces the entries of `row` under the pivots of slots after `from`.
    fn reduce_after(&self, row: &mut [TPolynomial], from: usize) -> Result<(), FlowupError> {
        for j in from + 1..self.order.len() {
            let Some(p) = &self.slots[j] else {
                continue;
            };
            let c = self.order[j];
            if row[c].degree() >= p[c].degree() {
                let (q, _) = row[c].div_rem(&p[c])?;
                sub_multiple(row, &q, p);
            }
        }
        Ok(())
    }

    fn insert(&mut self, mut x: Vec<TPolynomial>) -> Result<(), FlowupError> {
        let mut touched = None;
        for k in 0..self.order.len() {
            let c = self.order[k];
            if x[c].is_zero() {
                continue;
            }
            let Some(p) = self.slots[k].take() else {
                make_monic(&mut x, c);
                self.reduce_after(&mut x, k)?;
                self.slots[k] = Some(x);
                touched = Some(k);
                break;
            };
            let (q, rem) = x[c].div_rem(&p[c])?;
            if rem.is_zero() {
                sub_multiple(&mut x, &q, &p);
                self.slots[k] = Some(p);
                continue;
            }
            let (g, s, u) = p[c].ext_gcd(&x[c]);
            let pc = exact_quotient(&p[c], &g)?;
            let xc = exact_quotient(&x[c], &g)?;
            let mut pivot = combine(&s, &p, &u, &x);
            let rest = combine(&pc, &x, &(-&xc), &p);
            make_monic(&mut pivot, c);
            self.reduce_after(&mut pivot, k)?;
            self.slots[k] = Some(pivot);
            touched = Some(k);
            x = rest;
        }
        if let Some(k) = touched {
            for i in (0..k).rev() {
                if let Some(mut row) = self.slots[i].take() {
                    self.reduce_after(&mut row, i)?;
                    self.slots[i] = Some(row);
                }
            }
        }
        Ok(())
    }
}

fn exact_quotient(a: &TPolynomial, b: &TPolynomial) -> Result<TPolynomial, FlowupError> {
    let (q, r) = a.div_rem(b)?;
    if r.is_zero() {
        Ok(q)
    } else {
        Err(FlowupError::NotSpanning)
    }
}

/// Determinant of a square matrix by Bareiss elimination, up to sign.
fn bareiss_det(mut a: Vec<Vec<ZPoly>>) -> ZPoly {
    let n = a.len();
    let mut prev = ZPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return ZPoly::zero();
        };
        a.swap(k, p);
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot = &head[k];
        for row in tail.iter_mut() {
            let f = row[k].clone();
            for j in k + 1..n {
                row[j] = row[j].cross(&pivot[k], &pivot[j], &f).exact_div(&prev).expect("exact Bareiss step");
            }
        }
        prev = pivot[k].clone();
    }
    prev
}

/// Monic gcd of a sample of maximal minors on `cols`, starting from `det`.
/// The span contains it times every unit vector of the projection.
fn minor_gcd(rows: &[RestrictionVector], used: &[usize], cols: &[usize], det: &TPolynomial) -> TPolynomial {
    const PATIENCE: usize = 8;
    let mut d = det.monic();
    let mut idle = 0;
    let extra: Vec<usize> = (0..rows.len()).filter(|k| !used.contains(k)).collect();
    for &e in &extra {
        for i in 0..used.len() {
            if d.degree() == Some(0) || idle >= PATIENCE {
                return d;
            }
            let mut pick = used.to_vec();
            pick[i] = e;
            let m = integer_rows(pick.iter().map(|&k| cols.iter().map(|&c| &rows[k].0[c]).collect()));
            let minor = bareiss_det(m);
            let before = d.degree();
            if !minor.is_zero() {
                d = d.gcd(&minor.to_t());
            }
            if d.degree() < before {
                idle = 0;
            } else {
                idle += 1;
            }
        }
    }
    d
}

/// Fraction-free Gauss-Jordan on `[a | b]` with `a` square and nonsingular,
/// after scaling each row to integer coefficients. Returns `(d, w)` with
/// `a w = d b` for the original rows.
fn fraction_free_solve(
    a: &[Vec<&TPolynomial>],
    b: &[Vec<&TPolynomial>],
) -> Result<(TPolynomial, Vec<Vec<TPolynomial>>), FlowupError> {
    let n = a.len();
    let width = b.first().map_or(0, Vec::len);
    let mut m = integer_rows(a.iter().zip(b).map(|(x, y)| x.iter().chain(y).copied().collect()));
    let mut prev = ZPoly::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero()).ok_or(FlowupError::NotSpanning)?;
        m.swap(k, p);
        let pivot_row = m[k].clone();
        let pivot = &pivot_row[k];
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k].clone();
            for (j, x) in row.iter_mut().enumerate() {
                if j != k {
                    *x = x.cross(pivot, &pivot_row[j], &f).exact_div(&prev).ok_or(FlowupError::NotSpanning)?;
                }
            }
            row[k] = ZPoly::zero();
        }
        prev = pivot.clone();
    }
    // Every diagonal entry now equals the last pivot, the determinant up to sign.
    let w = m.iter().map(|row| row[n..n + width].iter().map(ZPoly::to_t).collect()).collect();
    Ok((prev.to_t(), w))
}

/// Largest modulus degree worth seeding the echelon with; beyond it the
/// dense reductions cost more than they save.
const SEED_DEGREE: usize = 8;

/// Reduced Hermite form of the `Q[t]`-span of `set` with columns taken in
/// `order`: pivots are monic, and entries above a pivot have lower degree.
///
/// The span is projected onto its pivot columns, where it contains `d` times
/// every unit vector for a gcd `d` of maximal minors. When `d` is small the
/// echelon is seeded with those vectors, keeping every entry of degree below
/// `deg d`. The result is lifted back through a fraction-free solve.
pub fn hermite_form(set: &[RestrictionVector], order: &[usize]) -> Result<Vec<Pivot>, FlowupError> {
    let Some(width) = set.first().map(RestrictionVector::len) else {
        return Ok(Vec::new());
    };
    check_lengths(set, width)?;
    let rows: Vec<RestrictionVector> = set.iter().filter(|x| !x.is_zero()).cloned().collect();
    let (cols, used) = rank_profile(&rows, order);
    let r = cols.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let in_cols: HashSet<usize> = cols.iter().copied().collect();
    let others: Vec<usize> = (0..width).filter(|j| !in_cols.contains(j)).collect();
    let m_rc: Vec<Vec<&TPolynomial>> = used.iter().map(|&k| cols.iter().map(|&c| &rows[k].0[c]).collect()).collect();
    let m_rj: Vec<Vec<&TPolynomial>> = used.iter().map(|&k| others.iter().map(|&j| &rows[k].0[j]).collect()).collect();
    let (det, w) = fraction_free_solve(&m_rc, &m_rj)?;
    let d = minor_gcd(&rows, &used, &cols, &det);

    let positions: Vec<usize> = (0..r).collect();
    let mut basis = Echelon::new(&positions);
    if d.degree().unwrap_or(0) <= SEED_DEGREE {
        for k in 0..r {
            let mut e = vec![TPolynomial::zero(); r];
            e[k] = d.clone();
            basis.slots[k] = Some(e);
        }
    }
    for x in &rows {
        basis.insert(cols.iter().map(|&c| x.0[c].clone()).collect())?;
    }
    basis
        .slots
        .into_iter()
        .enumerate()
        .map(|(k, y)| {
            let y = y.ok_or(FlowupError::NotSpanning)?;
            let mut v = vec![TPolynomial::zero(); width];
            for (m, &j) in others.iter().enumerate() {
                let num = y.iter().enumerate().fold(TPolynomial::zero(), |acc, (c, yc)| &acc + &(yc * &w[c][m]));
                v[j] = exact_quotient(&num, &det)?;
            }
            for (c, &col) in cols.iter().enumerate() {
                v[col] = y[c].clone();
            }
            Ok(Pivot { position: cols[k], vector: RestrictionVector(v) })
        })
        .collect()
}

/// Whether `x` lies in the `Q[t]`-span of a triangular basis.
pub fn in_span(pivots: &[Pivot], x: &RestrictionVector) -> bool {
    let mut r = x.clone();
    for p in pivots {
        let e = &r.0[p.position];
        if e.is_zero() {
            continue;
        }
        match e.div_rem(&p.vector.0[p.position]) {
            Ok((q, rem)) if rem.is_zero() => r.axpy(&q, &p.vector),
            _ => return false,
        }
    }
    r.is_zero()
}

/// One vector per position that admits one: vanishes before it in `order`,
/// with a monic minimal-degree entry there. Spans the same `Q[t]`-module.
pub fn construct_flowup_basis(
    generators: &[RestrictionVector],
    order: &[usize],
) -> Result<Vec<Pivot>, FlowupError> {
    let pivots = hermite_form(generators, order)?;
    if !generators.iter().all(|g| in_span(&pivots, g)) {
        return Err(FlowupError::NotSpanning);
    }
    Ok(pivots)
}

/// Module equality over `Q[t]`, via reduced Hermite forms.
pub fn module_equal(a: &[RestrictionVector], b: &[RestrictionVector], order: &[usize]) -> Result<bool, FlowupError> {
    Ok(hermite_form(a, order)? == hermite_form(b, order)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub label: String,
    /// Polynomial degree `d`; the cohomological degree is `2d`.
    pub degree: u32,
    pub vector: RestrictionVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateBasis {
    pub index: Vec<String>,
    pub classes: Vec<Candidate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub label: String,
    pub degree: u32,
    pub values: BTreeMap<String, TPolynomial>,
}

/// `{"index":[...],"classes":[{"label","degree","values":{...}}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateBasisJson {
    pub index: Vec<String>,
    pub classes: Vec<CandidateJson>,
}

impl CandidateBasis {
    pub fn vectors(&self) -> Vec<RestrictionVector> {
        self.classes.iter().map(|c| c.vector.clone()).collect()
    }

    pub fn to_json(&self) -> CandidateBasisJson {
        CandidateBasisJson {
            index: self.index.clone(),
            classes: self
                .classes
                .iter()
                .map(|c| CandidateJson {
                    label: c.label.clone(),
                    degree: c.degree,
                    values: self.index.iter().cloned().zip(c.vector.0.iter().cloned()).collect(),
                })
                .collect(),
        }
    }

    /// Missing values are zero.
    pub fn from_json(json: &CandidateBasisJson) -> Result<Self, FlowupError> {
        let classes = json
            .classes
            .iter()
            .map(|c| {
                if let Some(k) = c.values.keys().find(|k| !json.index.contains(k)) {
                    return Err(FlowupError::UnknownIndex(k.clone()));
                }
                let v = json
                    .index
                    .iter()
                    .map(|i| c.values.get(i).cloned().unwrap_or_default())
                    .collect();
                Ok(Candidate {
                    label: c.label.clone(),
                    degree: c.degree,
                    vector: RestrictionVector(v),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            index: json.index.clone(),
            classes,
        })
    }

    pub fn degree_histogram(&self) -> Vec<u32> {
        let mut h: Vec<u32> = Vec::new();
        for c in &self.classes {
            let d = c.degree as usize;
            if h.len() <= d {
                h.resize(d + 1, 0);
            }
            h[d] += 1;
        }
        h
    }
}

fn padded_eq(a: &[u32], b: &[u32]) -> bool {
    (0..a.len().max(b.len())).all(|j| a.get(j).copied().unwrap_or(0) == b.get(j).copied().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub independent: bool,
    pub histogram: Vec<u32>,
    pub targets: Vec<u32>,
    pub degrees_match: bool,
}

impl BasisReport {
    pub fn ok(&self) -> bool {
        self.independent && self.degrees_match
    }
}

/// Independence plus exactly `targets[j]` classes of degree `j`.
pub fn verify_pinball_basis(candidates: &CandidateBasis, targets: &[u32]) -> BasisReport {
    let histogram = candidates.degree_histogram();
    BasisReport {
        independent: linearly_independent(&candidates.vectors()),
        degrees_match: padded_eq(&histogram, targets),
        histogram,
        targets: targets.to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    /// Indices `j` with `deg_Y(j) != rank(f(j))`.
    pub degree_mismatches: Vec<usize>,
    pub histogram_matches: bool,
    pub triangular_order: Option<Vec<usize>>,
}

impl MatchingReport {
    pub fn ok(&self) -> bool {
        self.degree_mismatches.is_empty() && self.histogram_matches && self.triangular_order.is_some()
    }
}

/// `vectors[j]` is the class attached to index `j`; `f[j]` its image under
/// the matching, with rank `f_rank[j]`.
pub fn verify_matching_basis(
    ip: &IndexPoset,
    vectors: &[RestrictionVector],
    f: &[String],
    f_rank: &[u32],
    deg_y: &[u32],
    targets: &[u32],
) -> Result<MatchingReport, FlowupError> {
    let mut seen = HashSet::new();
    for x in f {
        if !seen.insert(x) {
            return Err(FlowupError::NotInjective(x.clone()));
        }
    }
    let degree_mismatches = (0..ip.len()).filter(|&j| deg_y[j] != f_rank[j]).collect();
    let mut hist: Vec<u32> = Vec::new();
    for &d in deg_y {
        if hist.len() <= d as usize {
            hist.resize(d as usize + 1, 0);
        }
        hist[d as usize] += 1;
    }
    Ok(MatchingReport {
        degree_mismatches,
        histogram_matches: padded_eq(&hist, targets),
        triangular_order: find_triangular_order(ip, vectors)?,
    })
}
