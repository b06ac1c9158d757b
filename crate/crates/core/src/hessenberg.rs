//! Fixed points and Betti numbers of regular nilpotent Hessenberg, Peterson
//! and Springer varieties.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coxeter::{CoxeterError, LieType, SignedRoot, WeylGroup, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HessenbergError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("{0:?} is not a negative root")]
    NotNegative(Vec<i32>),
    #[error("not closed under the Borel: {from:?} + a simple root gives {to:?}, which is missing")]
    NotBracketClosed { from: Vec<i32>, to: Vec<i32> },
    #[error("`{0:?}` is not a partition of {1}")]
    NotAPartition(Vec<usize>, usize),
    #[error("invalid Hessenberg function {0:?}")]
    BadHessenbergFunction(Vec<usize>),
    #[error("only type A is supported here, got {0}")]
    TypeANeeded(LieType),
    #[error("cannot parse root `{0}`")]
    BadRoot(String),
}

/// A Hessenberg space, recorded by the negative roots it contains beyond the Borel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HessenbergSpace {
    mh: BTreeSet<SignedRoot>,
}

impl HessenbergSpace {
    pub fn new(g: &WeylGroup, roots: impl IntoIterator<Item = SignedRoot>) -> Result<Self, HessenbergError> {
        let mh: BTreeSet<SignedRoot> = roots.into_iter().collect();
        let rs = g.roots();
        for r in &mh {
            if !r.negative {
                return Err(HessenbergError::NotNegative(rs.coeffs(*r)));
            }
        }
        for r in &mh {
            let c = rs.coeffs(*r);
            for i in 0..rs.rank() {
                let mut up = c.clone();
                up[i] += 1;
                if let Some(s) = rs.root_from_coeffs(&up) {
                    if s.negative && !mh.contains(&s) {
                        return Err(HessenbergError::NotBracketClosed { from: c, to: up });
                    }
                }
            }
        }
        Ok(Self { mh })
    }

    /// Builds from simple-root coefficient vectors.
    pub fn from_coeffs(g: &WeylGroup, coeffs: &[Vec<i32>]) -> Result<Self, HessenbergError> {
        let roots = coeffs
            .iter()
            .map(|c| {
                g.roots()
                    .root_from_coeffs(c)
                    .ok_or_else(|| HessenbergError::BadRoot(format!("{c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, roots)
    }

    /// Peterson: the negative simple roots.
    pub fn peterson(g: &WeylGroup) -> Self {
        let rs = g.roots();
        Self {
            mh: (0..rs.rank())
                .map(|i| SignedRoot::positive(rs.simple_index(i)).negate())
                .collect(),
        }
    }

    /// The whole Lie algebra.
    pub fn full(g: &WeylGroup) -> Self {
        Self {
            mh: (0..g.roots().positive_roots().len())
                .map(|k| SignedRoot::positive(k).negate())
                .collect(),
        }
    }

    /// The Borel itself.
    pub fn borel() -> Self {
        Self { mh: BTreeSet::new() }
    }

    /// Type A from a Hessenberg function `h`: contains `-(e_j - e_i)` for
    /// `j < i <= h(j)`.
    pub fn from_hessenberg_function(g: &WeylGroup, h: &[usize]) -> Result<Self, HessenbergError> {
        let rs = g.roots();
        if rs.lie_type() != LieType::A {
            return Err(HessenbergError::TypeANeeded(rs.lie_type()));
        }
        let n = rs.dim();
        let bad = || HessenbergError::BadHessenbergFunction(h.to_vec());
        if h.len() != n || h.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad());
        }
        if h.iter().enumerate().any(|(i, &x)| x < i + 1 || x > n) {
            return Err(bad());
        }
        let mut roots = Vec::new();
        for j in 1..=n {
            for i in (j + 1)..=h[j - 1] {
                let mut v = vec![0; n];
                v[j - 1] = -1;
                v[i - 1] = 1;
                roots.push(rs.root_of(&v).ok_or_else(bad)?);
            }
        }
        Self::new(g, roots)
    }

    /// Parses `-a1,-a2,-a1-a2` (or `-(a1+a2)`), one root per comma.
    pub fn parse(g: &WeylGroup, s: &str) -> Result<Self, HessenbergError> {
        let n = g.rank();
        let mut coeffs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            coeffs.push(parse_root(item, n).ok_or_else(|| HessenbergError::BadRoot(item.into()))?);
        }
        Self::from_coeffs(g, &coeffs)
    }

    pub fn roots(&self) -> impl Iterator<Item = SignedRoot> + '_ {
        self.mh.iter().copied()
    }

    pub fn contains(&self, r: SignedRoot) -> bool {
        self.mh.contains(&r)
    }

    pub fn len(&self) -> usize {
        self.mh.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mh.is_empty()
    }

    /// Closure under adding any positive root, not only simple ones.
    pub fn is_closed_under_all_positive(&self, g: &WeylGroup) -> bool {
        let rs = g.roots();
        self.mh.iter().all(|&r| {
            let c = rs.coeffs(r);
            rs.positive_roots().iter().all(|p| {
                let sum: Vec<i32> = c.iter().zip(&p.coeffs).map(|(a, b)| a + b).collect();
                match rs.root_from_coeffs(&sum) {
                    Some(s) if s.negative => self.mh.contains(&s),
                    _ => true,
                }
            })
        })
    }
}

fn parse_root(item: &str, n: usize) -> Option<Vec<i32>> {
    let compact: String = item.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(inner) = compact.strip_prefix("-(").and_then(|x| x.strip_suffix(')')) {
        return parse_root(inner, n).map(|v| v.iter().map(|x| -x).collect());
    }
    let mut out = vec![0; n];
    let mut cur = String::new();
    let mut terms = Vec::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (k, var) = match body.split_once('*') {
            Some((k, v)) => (k.parse::<i32>().ok()?, v),
            None => (1, body),
        };
        let i: usize = var.strip_prefix('a')?.parse().ok()?;
        if i == 0 || i > n {
            return None;
        }
        out[i - 1] += sign * k;
    }
    Some(out)
}

/// `{w : w^{-1}(alpha_i) in M_H or positive, for every simple alpha_i}`.
pub fn hessenberg_fixed_points(g: &WeylGroup, h: &HessenbergSpace) -> Vec<usize> {
    let rs = g.roots();
    (0..g.order())
        .filter(|&w| {
            let winv = g.inverse(w);
            (0..rs.rank()).all(|i| {
                let img = g.act_signed_root(winv, SignedRoot::positive(rs.simple_index(i)));
                !img.negative || h.contains(img)
            })
        })
        .collect()
}

/// Degree of a fixed point: `|{a > 0 : w^{-1}(a) in M_H}|`.
pub fn hessenberg_degree(g: &WeylGroup, h: &HessenbergSpace, w: usize) -> usize {
    let winv = g.inverse(w);
    (0..g.roots().positive_roots().len())
        .filter(|&k| h.contains(g.act_signed_root(winv, SignedRoot::positive(k))))
        .count()
}

/// Betti numbers `b_j`, indexed by the degree `j` above.
pub fn hessenberg_betti(g: &WeylGroup, h: &HessenbergSpace) -> Vec<u32> {
    let mut b: Vec<u32> = Vec::new();
    for w in hessenberg_fixed_points(g, h) {
        let d = hessenberg_degree(g, h, w);
        if b.len() <= d {
            b.resize(d + 1, 0);
        }
        b[d] += 1;
    }
    b
}

/// Subsets of the simple roots as sorted 1-based index lists, by bitmask.
pub fn simple_subsets(rank: usize) -> Vec<Vec<usize>> {
    (0u32..1 << rank)
        .map(|mask| (1..=rank).filter(|&i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// All pairs `(J, w_J)`.
pub fn peterson_fixed_points(g: &WeylGroup) -> Vec<(Vec<usize>, usize)> {
    simple_subsets(g.rank())
        .into_iter()
        .map(|j| {
            let w = g.max_parabolic(&j);
            (j, w)
        })
        .collect()
}

/// `v_J`: the simple reflections of `J` multiplied in increasing order.
pub fn peterson_rolldown(g: &WeylGroup, j: &[usize]) -> Result<usize, CoxeterError> {
    let mut sorted = j.to_vec();
    sorted.sort_unstable();
    g.from_word(&Word(sorted))
}

pub fn peterson_degree(j: &[usize]) -> usize {
    j.len()
}

/// A weakly decreasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>, n: usize) -> Result<Self, HessenbergError> {
        let ok = parts.iter().all(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] >= w[1])
            && parts.iter().sum::<usize>() == n;
        if ok {
            Ok(Self(parts))
        } else {
            Err(HessenbergError::NotAPartition(parts, n))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Partial sums strictly below `n`.
    pub fn descent_positions(&self) -> BTreeSet<usize> {
        let n: usize = self.0.iter().sum();
        self.0
            .iter()
            .scan(0, |s, &p| {
                *s += p;
                Some(*s)
            })
            .filter(|&s| s < n)
            .collect()
    }
}

fn check_type_a(g: &WeylGroup, lambda: &Partition) -> Result<(), HessenbergError> {
    let rs = g.roots();
    if rs.lie_type() != LieType::A {
        return Err(HessenbergError::TypeANeeded(rs.lie_type()));
    }
    let n = rs.dim();
    if lambda.0.iter().sum::<usize>() != n {
        return Err(HessenbergError::NotAPartition(lambda.0.clone(), n));
    }
    Ok(())
}

/// `{w in S_n : descents of w^{-1} lie among the partial sums of lambda}`,
/// in element order (hence by length).
pub fn springer_fixed_points(g: &WeylGroup, lambda: &Partition) -> Result<Vec<usize>, HessenbergError> {
    check_type_a(g, lambda)?;
    let allowed = lambda.descent_positions();
    Ok((0..g.order())
        .filter(|&w| g.descents(g.inverse(w)).iter().all(|d| allowed.contains(d)))
        .collect())
}

/// `w_i = s_{n-1} ... s_i` for `i = 1..n-1` and `w_n = e`, in that order.
pub fn subregular_fixed_points(g: &WeylGroup) -> Result<Vec<usize>, HessenbergError> {
    let n = g.roots().dim();
    check_type_a(g, &Partition(vec![n]))?;
    (1..=n)
        .map(|i| {
            let word = Word((i..n).rev().collect());
            g.from_word(&word).map_err(HessenbergError::from)
        })
        .collect()
}

/// `v_i = s_i` for `i < n`, `v_n = e`.
pub fn subregular_rolldown(g: &WeylGroup, i: usize, n: usize) -> usize {
    if i >= n {
        g.identity()
    } else {
        g.simple_reflection(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> WeylGroup {
        WeylGroup::new(LieType::A, 3).unwrap()
    }

    #[test]
    fn fixed_point_families() {
        let g = a3();
        assert_eq!(hessenberg_fixed_points(&g, &HessenbergSpace::full(&g)).len(), 24);
        assert_eq!(hessenberg_fixed_points(&g, &HessenbergSpace::borel()), vec![0]);
        assert_eq!(hessenberg_betti(&g, &HessenbergSpace::borel()), vec![1]);
        let p = HessenbergSpace::peterson(&g);
        let fp = hessenberg_fixed_points(&g, &p);
        assert_eq!(fp.len(), 8);
        let mut wj: Vec<usize> = peterson_fixed_points(&g).into_iter().map(|(_, w)| w).collect();
        wj.sort_unstable();
        assert_eq!(fp, wj);
        assert_eq!(hessenberg_betti(&g, &p), vec![1, 3, 3, 1]);
    }

    #[test]
    fn h3344() {
        let g = a3();
        let h = HessenbergSpace::from_hessenberg_function(&g, &[3, 3, 4, 4]).unwrap();
        let parsed = HessenbergSpace::parse(&g, "-a1, -a2, -a3, -a1-a2").unwrap();
        assert_eq!(h, parsed);
        assert_eq!(HessenbergSpace::parse(&g, "-(a1+a2),-a1,-a2,-a3").unwrap(), h);
        assert_eq!(hessenberg_fixed_points(&g, &h).len(), 12);
        assert_eq!(hessenberg_betti(&g, &h), vec![1, 3, 4, 3, 1]);
        assert!(HessenbergSpace::from_hessenberg_function(&g, &[2, 2, 2, 4]).is_err());
        assert!(HessenbergSpace::from_hessenberg_function(&g, &[3, 2, 4, 4]).is_err());
    }

    #[test]
    fn closure_validation() {
        let g = a3();
        assert!(matches!(
            HessenbergSpace::parse(&g, "-a1-a2"),
            Err(HessenbergError::NotBracketClosed { .. })
        ));
        assert!(matches!(HessenbergSpace::parse(&g, "a1"), Err(HessenbergError::NotNegative(_))));
        assert!(HessenbergSpace::parse(&g, "-a4").is_err());
    }

    #[test]
    fn springer_examples() {
        let g = a3();
        let one_line = |w: usize| g.element(g.inverse(w)).to_string();
        let fp = springer_fixed_points(&g, &Partition::new(vec![2, 2], 4).unwrap()).unwrap();
        let mut inv: Vec<String> = fp.iter().map(|&w| one_line(w)).collect();
        inv.sort();
        assert_eq!(
            inv,
            ["[1,2,3,4]", "[1,3,2,4]", "[1,4,2,3]", "[2,3,1,4]", "[2,4,1,3]", "[3,4,1,2]"]
        );
        let fp = springer_fixed_points(&g, &Partition::new(vec![4], 4).unwrap()).unwrap();
        assert_eq!(fp, vec![0]);
        let sub = springer_fixed_points(&g, &Partition::new(vec![3, 1], 4).unwrap()).unwrap();
        let mut listed = subregular_fixed_points(&g).unwrap();
        listed.sort_unstable();
        assert_eq!(sub, listed);
        assert!(Partition::new(vec![1, 2], 3).is_err());
        assert!(springer_fixed_points(&g, &Partition::new(vec![2, 1], 3).unwrap()).is_err());
    }

    #[test]
    fn peterson_rolldowns() {
        let g = a3();
        assert_eq!(peterson_rolldown(&g, &[]).unwrap(), 0);
        let v = peterson_rolldown(&g, &[3, 1]).unwrap();
        assert_eq!(v, g.parse("s1.s3").unwrap());
        assert_eq!(g.length(v), 2);
        assert_eq!(peterson_degree(&[1, 2, 3]), 3);
        assert_eq!(subregular_rolldown(&g, 4, 4), 0);
        assert_eq!(subregular_rolldown(&g, 2, 4), g.simple_reflection(2));
    }
}
