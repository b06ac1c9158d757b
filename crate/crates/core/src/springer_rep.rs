//! The Kostant-Kumar action on restriction classes and the resulting graded
//! representation on the subregular Springer basis, compared with the
//! Garsia-Procesi tableau model.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::billey::{BilleyError, RestrictionClass};
use crate::coxeter::WeylGroup;
use crate::poly::{RootPolynomial, TPolynomial};

/// Square matrix over `Q[t]`; column `c` is the image of basis vector `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KKMatrix {
    entries: Vec<Vec<TPolynomial>>,
}

impl KKMatrix {
    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { TPolynomial::one() } else { TPolynomial::zero() })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &TPolynomial {
        &self.entries[row][col]
    }

    pub fn mul(&self, other: &KKMatrix) -> KKMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n).fold(TPolynomial::zero(), |acc, k| {
                            let a = &self.entries[r][k];
                            let b = &other.entries[k][c];
                            if a.is_zero() || b.is_zero() {
                                acc
                            } else {
                                &acc + &(a * b)
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        KKMatrix { entries }
    }

    /// Entries evaluated at `t = 0`.
    pub fn at_zero(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.eval_zero().to_integer().to_i64().expect("small entry"))
                    .collect()
            })
            .collect()
    }
}

/// Action of `s_j` on the basis `(p_e, p_{s_1}, ..., p_{s_{n-1}})`:
/// `s_j p_{s_j} = t p_e - p_{s_j} + p_{s_{j-1}} + p_{s_{j+1}}` (terms in range),
/// all other basis vectors fixed.
pub fn kk_matrix_simple(n: usize, j: usize) -> KKMatrix {
    assert!(j >= 1 && j < n, "generator s_{j} out of range for n = {n}");
    let mut m = KKMatrix::identity(n);
    m.entries[0][j] = TPolynomial::t();
    m.entries[j][j] = TPolynomial::from_int(-1);
    if j > 1 {
        m.entries[j - 1][j] = TPolynomial::one();
    }
    if j + 1 < n {
        m.entries[j + 1][j] = TPolynomial::one();
    }
    m
}

/// Number of letters of a type A group.
fn letters(g: &WeylGroup) -> usize {
    g.roots().dim()
}

/// Matrix of `w` as the product along its canonical reduced word.
pub fn kk_matrix(g: &WeylGroup, w: usize) -> KKMatrix {
    let n = letters(g);
    g.reduced_word(w)
        .0
        .iter()
        .fold(KKMatrix::identity(n), |m, &i| m.mul(&kk_matrix_simple(n, i)))
}

/// Matrices of every element, built by right multiplication along lengths.
pub fn kk_representation(g: &WeylGroup) -> Vec<KKMatrix> {
    let n = letters(g);
    let gens: Vec<KKMatrix> = (1..n).map(|i| kk_matrix_simple(n, i)).collect();
    let mut out: Vec<Option<KKMatrix>> = vec![None; g.order()];
    out[0] = Some(KKMatrix::identity(n));
    for w in 0..g.order() {
        let m = out[w].clone().expect("built from a shorter element");
        for i in 1..n {
            let ws = g.mul_simple_right(w, i);
            if out[ws].is_none() {
                out[ws] = Some(m.mul(&gens[i - 1]));
            }
        }
    }
    out.into_iter().map(|m| m.expect("every element reached")).collect()
}

/// Whether `rep[w s_i] = rep[w] rep[s_i]` for every `w` and `i`, which makes
/// `rep` a homomorphism.
pub fn is_representation(g: &WeylGroup, rep: &[KKMatrix]) -> bool {
    let n = letters(g);
    (0..g.order()).all(|w| {
        (1..n).all(|i| rep[g.mul_simple_right(w, i)] == rep[w].mul(&kk_matrix_simple(n, i)))
    })
}

/// Trace at `t = 0` on the degree-`2 * piece` summand: `p_e` for piece 0,
/// the `p_{s_i}` for piece 1.
pub fn character_of(m: &KKMatrix, piece: u32) -> i64 {
    let z = m.at_zero();
    match piece {
        0 => z[0][0],
        1 => (1..z.len()).map(|i| z[i][i]).sum(),
        _ => 0,
    }
}

pub fn character(g: &WeylGroup, w: usize, piece: u32) -> i64 {
    character_of(&kk_matrix(g, w), piece)
}

/// A row-strict filling of shape `(n-1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowStrictFilling {
    pub top: Vec<usize>,
    pub bottom: usize,
}

impl RowStrictFilling {
    /// The filling with `bottom` in the lower box.
    pub fn with_bottom(n: usize, bottom: usize) -> Self {
        Self {
            top: (1..=n).filter(|&x| x != bottom).collect(),
            bottom,
        }
    }

    /// Writes `w(i)` wherever `i` was, then sorts the rows.
    pub fn act(&self, w: &[i8]) -> Self {
        let img = |i: usize| w[i - 1] as usize;
        let mut top: Vec<usize> = self.top.iter().map(|&i| img(i)).collect();
        top.sort_unstable();
        Self {
            top,
            bottom: img(self.bottom),
        }
    }
}

/// Coordinates in `T_1..T_n`, where `T_b` has `b` in the lower box.
fn act_on_span(n: usize, w: &[i8], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n];
    for b in 1..=n {
        if v[b - 1] != 0 {
            let img = RowStrictFilling::with_bottom(n, b).act(w);
            out[img.bottom - 1] += v[b - 1];
        }
    }
    out
}

/// Trace on `span{v_0}` (piece 0) or `span{v_2, ..., v_n}` (piece 1), with
/// `v_0 = sum T_b` and `v_j = T_j - T_1`.
pub fn gp_character(w: &[i8], piece: u32) -> i64 {
    let n = w.len();
    match piece {
        0 => {
            let image = act_on_span(n, w, &vec![1; n]);
            image[0]
        }
        1 => (2..=n)
            .map(|j| {
                let mut v = vec![0; n];
                v[j - 1] = 1;
                v[0] = -1;
                // A vector with zero coordinate sum is sum_{j >= 2} c_j v_j.
                act_on_span(n, w, &v)[j - 1]
            })
            .sum(),
        _ => 0,
    }
}

pub fn fixed_point_count(w: &[i8]) -> usize {
    w.iter().enumerate().filter(|&(i, &x)| x as usize == i + 1).count()
}

/// Cycle type as a weakly decreasing partition.
pub fn cycle_type(w: &[i8]) -> Vec<usize> {
    let n = w.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = w[i] as usize - 1;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// First element of each conjugacy class, keyed by cycle type.
pub fn class_representatives(g: &WeylGroup) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    for w in 0..g.order() {
        out.entry(cycle_type(g.element(w).one_line())).or_insert(w);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub cycle_type: Vec<usize>,
    pub representative: String,
    pub fixed_points: usize,
    pub psi0: i64,
    pub psi1: i64,
    pub chi0: i64,
    pub chi1: i64,
}

impl CharacterRow {
    pub fn matches(&self) -> bool {
        self.psi0 == self.chi0 && self.psi1 == self.chi1
    }
}

/// One row per cycle type.
pub fn character_table(g: &WeylGroup) -> Vec<CharacterRow> {
    let mut rows: Vec<CharacterRow> = class_representatives(g)
        .into_iter()
        .map(|(ct, w)| {
            let one_line = g.element(w).one_line();
            let m = kk_matrix(g, w);
            CharacterRow {
                cycle_type: ct,
                representative: g.label(w),
                fixed_points: fixed_point_count(one_line),
                psi0: character_of(&m, 0),
                psi1: character_of(&m, 1),
                chi0: gp_character(one_line, 0),
                chi1: gp_character(one_line, 1),
            }
        })
        .collect();
    rows.sort_by(|a, b| b.cycle_type.cmp(&a.cycle_type));
    rows
}

/// `(w . sigma)(u) = sigma(u w)`.
pub fn kk_act_on_class(
    g: &WeylGroup,
    w: usize,
    class: &RestrictionClass<RootPolynomial>,
) -> Result<RestrictionClass<RootPolynomial>, BilleyError> {
    let full = class.elements.len() == g.order() && class.elements.iter().enumerate().all(|(i, &x)| i == x);
    if !full {
        return Err(BilleyError::PartialSupport);
    }
    Ok(RestrictionClass {
        label: format!("{}.({})", g.label(w), class.label),
        degree: class.degree,
        elements: class.elements.clone(),
        values: (0..g.order()).map(|u| class.values[g.mul(u, w)].clone()).collect(),
    })
}

/// Whether `t` divides every entry above row 0 in column 0 and in the
/// lower-left block, so the `t = 0` matrix fixes `p_e`.
pub fn fixes_identity_class(m: &KKMatrix) -> bool {
    let z = m.at_zero();
    z[0][0] == 1 && (1..z.len()).all(|r| z[r][0] == 0) && (1..z.len()).all(|c| z[0][c].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::LieType;

    fn s(n: usize) -> WeylGroup {
        WeylGroup::new(LieType::A, n - 1).unwrap()
    }

    #[test]
    fn simple_matrix_shape() {
        let m = kk_matrix_simple(4, 1);
        assert_eq!(m.get(0, 1), &TPolynomial::t());
        assert_eq!(m.get(1, 1), &TPolynomial::from_int(-1));
        assert_eq!(m.get(2, 1), &TPolynomial::one());
        assert_eq!(m.get(3, 1), &TPolynomial::zero());
        for c in [0, 2, 3] {
            for r in 0..4 {
                let expect = if r == c { TPolynomial::one() } else { TPolynomial::zero() };
                assert_eq!(m.get(r, c), &expect);
            }
        }
    }

    #[test]
    fn relations_in_s4() {
        let n = 4;
        let id = KKMatrix::identity(n);
        let m: Vec<KKMatrix> = (1..n).map(|j| kk_matrix_simple(n, j)).collect();
        for x in &m {
            assert_eq!(x.mul(x), id);
        }
        assert_eq!(m[0].mul(&m[1]).mul(&m[0]), m[1].mul(&m[0]).mul(&m[1]));
        assert_eq!(m[0].mul(&m[2]), m[2].mul(&m[0]));
        let g = s(4);
        assert_eq!(kk_matrix(&g, 0), id);
        assert!(is_representation(&g, &kk_representation(&g)));
    }

    #[test]
    fn characters_small() {
        let g = s(4);
        assert_eq!(character(&g, 0, 1), 3);
        assert_eq!(character(&g, g.simple_reflection(1), 1), 1);
        let g3 = s(3);
        let cycle = g3.parse("s1.s2").unwrap();
        assert_eq!(gp_character(g3.element(cycle).one_line(), 1), -1);
        assert_eq!(gp_character(g3.element(cycle).one_line(), 0), 1);
    }

    #[test]
    fn filling_action() {
        let f = RowStrictFilling::with_bottom(4, 2);
        let g = RowStrictFilling::with_bottom(4, 4);
        let w: [i8; 4] = [3, 4, 1, 2];
        assert_eq!(f.act(&w), g);
        assert_eq!(cycle_type(&w), vec![2, 2]);
        assert_eq!(fixed_point_count(&w), 0);
    }
}
