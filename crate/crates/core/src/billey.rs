//! Restrictions of equivariant Schubert classes to fixed points.

use thiserror::Error;

use crate::coxeter::{SignedRoot, WeylGroup, Word};
use crate::poly::{RootPolynomial, TPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BilleyError {
    #[error("element index {0} is not in the group")]
    UnknownElement(usize),
    #[error("class is not defined on every element of the group")]
    PartialSupport,
    #[error("word `{0}` is not reduced")]
    NotReduced(String),
}

/// Values of a class at a list of fixed points. `degree` is cohomological,
/// so a Schubert class `sigma_v` carries `2 * l(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionClass<P> {
    pub label: String,
    pub degree: u32,
    pub elements: Vec<usize>,
    pub values: Vec<P>,
}

impl<P> RestrictionClass<P> {
    pub fn value_at(&self, w: usize) -> Option<&P> {
        self.elements.iter().position(|&x| x == w).map(|i| &self.values[i])
    }
}

/// The roots `r(j) = s_{b_1} ... s_{b_{j-1}} (alpha_{b_j})` of a reduced word,
/// as simple-root coefficient vectors.
pub fn word_roots(g: &WeylGroup, word: &Word) -> Result<Vec<Vec<i32>>, BilleyError> {
    let roots = g.roots();
    let mut prefix = g.identity();
    let mut out = Vec::with_capacity(word.len());
    for &b in &word.0 {
        let r = g.act_signed_root(prefix, SignedRoot::positive(roots.simple_index(b - 1)));
        if r.negative {
            return Err(BilleyError::NotReduced(word.to_string()));
        }
        out.push(roots.coeffs(r));
        prefix = g.mul_simple_right(prefix, b);
    }
    Ok(out)
}

/// Index sets `j_1 < ... < j_k` whose letters form a reduced word for `v`.
pub fn reduced_subwords(g: &WeylGroup, v: usize, word: &Word) -> Vec<Vec<usize>> {
    let target = g.length(v) as usize;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(target);
    fn go(
        g: &WeylGroup,
        word: &Word,
        v: usize,
        target: usize,
        pos: usize,
        cur: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == target {
            if cur == v {
                out.push(chosen.clone());
            }
            return;
        }
        if target - chosen.len() > word.len() - pos {
            return;
        }
        for j in pos..word.len() {
            if target - chosen.len() > word.len() - j {
                break;
            }
            let next = g.mul_simple_right(cur, word.0[j]);
            if g.length(next) as usize != chosen.len() + 1 {
                continue;
            }
            chosen.push(j);
            go(g, word, v, target, j + 1, next, chosen, out);
            chosen.pop();
        }
    }
    go(g, word, v, target, 0, g.identity(), &mut chosen, &mut out);
    out
}

/// `sigma_v(w)` computed from the given reduced word of `w`.
pub fn billey_restrict_with_word(
    g: &WeylGroup,
    v: usize,
    word: &Word,
) -> Result<RootPolynomial, BilleyError> {
    let n = g.rank();
    let roots: Vec<RootPolynomial> = word_roots(g, word)?
        .iter()
        .map(|c| RootPolynomial::linear(c))
        .collect();
    let mut total = RootPolynomial::zero(n);
    for sub in reduced_subwords(g, v, word) {
        let mut term = RootPolynomial::one(n);
        for j in sub {
            term = &term * &roots[j];
        }
        total = &total + &term;
    }
    Ok(total)
}

/// `sigma_v(w)`, using the canonical reduced word of `w`.
pub fn billey_restrict(g: &WeylGroup, v: usize, w: usize) -> Result<RootPolynomial, BilleyError> {
    for x in [v, w] {
        if x >= g.order() {
            return Err(BilleyError::UnknownElement(x));
        }
    }
    if g.length(v) > g.length(w) {
        return Ok(RootPolynomial::zero(g.rank()));
    }
    billey_restrict_with_word(g, v, &g.reduced_word(w))
}

pub fn specialize_to_t(p: &RootPolynomial) -> TPolynomial {
    p.specialize()
}

/// `sigma_v` on all of `W`, indexed by element.
pub fn schubert_class_full(g: &WeylGroup, v: usize) -> Result<RestrictionClass<RootPolynomial>, BilleyError> {
    let values = (0..g.order())
        .map(|w| billey_restrict(g, v, w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RestrictionClass {
        label: g.label(v),
        degree: 2 * g.length(v),
        elements: (0..g.order()).collect(),
        values,
    })
}

/// `p_v`: the specialized class restricted to `subset`.
pub fn schubert_class(
    g: &WeylGroup,
    v: usize,
    subset: &[usize],
) -> Result<RestrictionClass<TPolynomial>, BilleyError> {
    let values = subset
        .iter()
        .map(|&w| billey_restrict(g, v, w).map(|p| p.specialize()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RestrictionClass {
        label: g.label(v),
        degree: 2 * g.length(v),
        elements: subset.to_vec(),
        values,
    })
}

fn full_values<'a>(
    g: &WeylGroup,
    class: &'a RestrictionClass<RootPolynomial>,
) -> Result<&'a [RootPolynomial], BilleyError> {
    let full = class.elements.len() == g.order() && class.elements.iter().enumerate().all(|(i, &w)| i == w);
    if full {
        Ok(&class.values)
    } else {
        Err(BilleyError::PartialSupport)
    }
}

/// First GKM edge `(w, s_alpha w)` whose root fails to divide the difference.
pub fn gkm_violation(
    g: &WeylGroup,
    class: &RestrictionClass<RootPolynomial>,
) -> Result<Option<(usize, usize)>, BilleyError> {
    let x = full_values(g, class)?;
    let roots = g.roots();
    for (k, r) in roots.positive_roots().iter().enumerate() {
        let alpha = RootPolynomial::linear(&r.coeffs);
        let t = g.reflection(k);
        for w in 0..g.order() {
            let u = g.mul(t, w);
            if u < w {
                continue;
            }
            if (&x[w] - &x[u]).div_linear(&alpha).is_none() {
                return Ok(Some((w, u)));
            }
        }
    }
    Ok(None)
}

pub fn gkm_divisibility_check(
    g: &WeylGroup,
    class: &RestrictionClass<RootPolynomial>,
) -> Result<bool, BilleyError> {
    Ok(gkm_violation(g, class)?.is_none())
}

/// Exact quotient by `sigma_v(v)`, the product of the word roots of `v`.
fn divide_by_diagonal(g: &WeylGroup, v: usize, p: &RootPolynomial) -> Option<RootPolynomial> {
    let roots = word_roots(g, &g.reduced_word(v)).expect("canonical word is reduced");
    let mut q = p.clone();
    for r in roots {
        q = q.div_linear(&RootPolynomial::linear(&r))?;
    }
    Some(q)
}

/// Coefficients `c_v` with `x = sum_v c_v sigma_v`, by a triangular solve over
/// `W` in length order. `None` when some coefficient is not a polynomial.
pub fn schubert_expansion(
    g: &WeylGroup,
    class: &RestrictionClass<RootPolynomial>,
) -> Result<Option<Vec<RootPolynomial>>, BilleyError> {
    let x = full_values(g, class)?;
    let n = g.order();
    let sigma: Vec<Vec<RootPolynomial>> = (0..n)
        .map(|u| (0..n).map(|w| billey_restrict(g, u, w)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut coeffs: Vec<RootPolynomial> = Vec::with_capacity(n);
    // Element indices are already sorted by length.
    for v in 0..n {
        let mut rest = x[v].clone();
        for (u, c) in coeffs.iter().enumerate() {
            if !c.is_zero() && !sigma[u][v].is_zero() {
                rest = &rest - &(c * &sigma[u][v]);
            }
        }
        match divide_by_diagonal(g, v, &rest) {
            Some(c) => coeffs.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(coeffs))
}
