#![allow(dead_code)]

use num_rational::BigRational;
use num_bigint::BigInt;
use pinball_core::flowup::{IndexPoset, RestrictionVector};
use pinball_core::{GradedPoset, TPolynomial};
use rand::rngs::StdRng;
use rand::Rng;

/// A random graded poset on `n` elements: every element above rank 0 covers
/// at least one element of the rank below.
pub fn random_graded_poset(rng: &mut StdRng, n: usize) -> GradedPoset {
    let mut rank = vec![0u32];
    for _ in 1..n {
        let top = *rank.last().unwrap();
        let r = if rng.gen_bool(0.45) { top + 1 } else { rng.gen_range(0..=top) };
        rank.push(r);
    }
    rank.sort_unstable();
    let ids: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut covers = Vec::new();
    for u in 0..n {
        if rank[u] == 0 {
            continue;
        }
        let below: Vec<usize> = (0..n).filter(|&l| rank[l] + 1 == rank[u]).collect();
        let forced = below[rng.gen_range(0..below.len())];
        for &l in &below {
            if l == forced || rng.gen_bool(0.3) {
                covers.push((u, l));
            }
        }
    }
    GradedPoset::from_indexed(ids, rank, covers).expect("valid random poset")
}

pub fn random_poly(rng: &mut StdRng) -> TPolynomial {
    let deg = rng.gen_range(0..=2);
    let coeffs: Vec<BigRational> = (0..=deg)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
        .collect();
    TPolynomial::from_coeffs(coeffs)
}

/// Nonzero vectors with roughly half of their entries nonzero.
pub fn random_vectors(rng: &mut StdRng, len: usize, count: usize) -> Vec<RestrictionVector> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = RestrictionVector(
            (0..len)
                .map(|_| if rng.gen_bool(0.5) { random_poly(rng) } else { TPolynomial::zero() })
                .collect(),
        );
        if !v.is_zero() {
            out.push(v);
        }
    }
    out
}

pub fn all_of(p: &GradedPoset) -> IndexPoset {
    let members: Vec<usize> = (0..p.len()).collect();
    IndexPoset::induced(p, &members)
}

pub fn binomials(n: usize) -> Vec<u32> {
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}
