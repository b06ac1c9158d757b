//! Exact polynomials over the rationals.
//!
//! [`RootPolynomial`] is a sparse polynomial in the simple roots `a1..an`;
//! [`TPolynomial`] is a dense polynomial in a single variable `t`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Polynomial in `a1..an` with rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RootPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The linear form `sum c_i a_i`.
    pub fn linear(coeffs: &[i32]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, rat(c as i64));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Substitute `a_i = t` for every `i`.
    pub fn specialize(&self) -> TPolynomial {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (e, c) in &self.terms {
            let d: u32 = e.iter().sum();
            let d = d as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigRational::zero());
            }
            coeffs[d] += c;
        }
        TPolynomial::from_coeffs(coeffs)
    }

    /// All coefficients are positive integers.
    pub fn has_positive_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && c.is_positive())
    }

    /// Exact division by a nonzero linear form: `Some(q)` with `self = q * l`,
    /// or `None` when `l` does not divide `self`.
    pub fn div_linear(&self, l: &RootPolynomial) -> Option<RootPolynomial> {
        assert_eq!(l.degree(), Some(1), "divisor must be a linear form");
        // Pivot on the last variable appearing in `l`.
        let (pe, pc) = l.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let k = pe.iter().position(|&x| x == 1)?;
        let mut rem = self.clone();
        let mut quot = RootPolynomial::zero(self.nvars);
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|(e, _)| e[k] > 0)
                .max_by(|a, b| a.0[k].cmp(&b.0[k]).then_with(|| a.0.cmp(b.0)))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((mut e, c)) = next else { break };
            e[k] -= 1;
            let q = RootPolynomial {
                nvars: self.nvars,
                terms: BTreeMap::from([(e, c / &pc)]),
            };
            rem = &rem - &(&q * l);
            quot = &quot + &q;
        }
        rem.is_zero().then_some(quot)
    }
}

impl Add for &RootPolynomial {
    type Output = RootPolynomial;

    fn add(self, rhs: &RootPolynomial) -> RootPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RootPolynomial {
    type Output = RootPolynomial;

    fn sub(self, rhs: &RootPolynomial) -> RootPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &RootPolynomial {
    type Output = RootPolynomial;

    fn neg(self) -> RootPolynomial {
        self.scale(&rat(-1))
    }
}

impl Mul for &RootPolynomial {
    type Output = RootPolynomial;

    fn mul(self, rhs: &RootPolynomial) -> RootPolynomial {
        let nvars = self.nvars.max(rhs.nvars);
        let mut out = RootPolynomial::zero(nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = (0..nvars)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for RootPolynomial {
    /// Graded lexicographic, largest first: `2*a1*a2 + a2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("a{}", i + 1)
                    } else {
                        format!("a{}^{}", i + 1, p)
                    }
                })
                .collect();
            if vars.is_empty() {
                f.write_str(&fmt_coeff(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_coeff(&abs))?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Polynomial in `t`; `coeffs[k]` multiplies `t^k`; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TPolynomial {
    coeffs: Vec<BigRational>,
}

impl TPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    /// `c * t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Nonzero with a single term `c t^d`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn eval_zero(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&(BigRational::one() / l)),
        }
    }

    pub fn div_rem(&self, d: &TPolynomial) -> Result<(TPolynomial, TPolynomial), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Self {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.coeffs().iter().filter(|c| !c.is_zero()) {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return self.clone();
        }
        self.scale(&BigRational::new(den, num))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &TPolynomial) -> TPolynomial {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// `(g, s, u)` with `g` the monic gcd and `s * self + u * other = g`.
    pub fn ext_gcd(&self, other: &TPolynomial) -> (TPolynomial, TPolynomial, TPolynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let u = &u0 - &(&q * &u1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (u0, u1) = (u1, u);
        }
        match r0.leading().cloned() {
            None => (r0, s0, u0),
            Some(lead) => {
                let inv = Self::constant(BigRational::one() / lead);
                (&r0 * &inv, &s0 * &inv, &u0 * &inv)
            }
        }
    }

    /// Nonnegative integer coefficients.
    pub fn in_nonnegative_integers(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Human form: `3t^2 + 1`.
    pub fn pretty(&self) -> String {
        self.render(" + ", " - ", "")
    }

    fn render(&self, plus: &str, minus: &str, times: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { minus } else { plus });
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if var.is_empty() {
                out.push_str(&fmt_coeff(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_coeff(&abs));
                    out.push_str(times);
                }
                out.push_str(&var);
            }
        }
        out
    }
}

impl fmt::Display for TPolynomial {
    /// Canonical form: `3*t^2+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("+", "-", "*"))
    }
}

impl FromStr for TPolynomial {
    type Err = PolyError;

    /// Accepts both `3*t^2+1` and `3t^2 + 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PolyError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut out = TPolynomial::zero();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, k) = match body.find('t') {
                None => (parse_rational(body).ok_or_else(err)?, 0),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() {
                        BigRational::one()
                    } else {
                        parse_rational(c).ok_or_else(err)?
                    };
                    let rest = &body[pos + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(err)?
                    };
                    (c, k)
                }
            };
            let coef = if neg { -coef } else { coef };
            out = &out + &TPolynomial::monomial(coef, k);
        }
        Ok(out)
    }
}

impl Serialize for TPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &TPolynomial {
    type Output = TPolynomial;

    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &TPolynomial {
    type Output = TPolynomial;

    fn sub(self, rhs: &TPolynomial) -> TPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &TPolynomial {
    type Output = TPolynomial;

    fn neg(self) -> TPolynomial {
        self.scale(&rat(-1))
    }
}

impl Mul for &TPolynomial {
    type Output = TPolynomial;

    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return TPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPolynomial::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tp(s: &str) -> TPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn root_display_order() {
        let a1 = RootPolynomial::linear(&[1, 0, 0]);
        let a2 = RootPolynomial::linear(&[0, 1, 0]);
        let p = &(&(&a1 * &a2) + &(&a1 * &a2)) + &(&a2 * &a2);
        assert_eq!(p.to_string(), "2*a1*a2 + a2^2");
        assert_eq!(RootPolynomial::zero(3).to_string(), "0");
        assert_eq!(a1.to_string(), "a1");
        assert_eq!((&a1 - &a2).to_string(), "a1 - a2");
    }

    #[test]
    fn specialization() {
        let p = RootPolynomial::linear(&[1, 1, 0]);
        assert_eq!(p.specialize(), tp("2t"));
        let q = &RootPolynomial::linear(&[1, 0, 0]) * &RootPolynomial::linear(&[0, 0, 1]);
        assert_eq!(q.specialize(), tp("t^2"));
        assert!(RootPolynomial::zero(3).specialize().is_zero());
    }

    #[test]
    fn linear_division() {
        let a1 = RootPolynomial::linear(&[1, 0]);
        let a12 = RootPolynomial::linear(&[1, 1]);
        let p = &(&a1 * &a12) * &a12;
        assert_eq!(p.div_linear(&a12).unwrap(), &a1 * &a12);
        assert!(a1.div_linear(&RootPolynomial::linear(&[0, 1])).is_none());
        assert!(RootPolynomial::zero(2).div_linear(&a1).unwrap().is_zero());
    }

    #[test]
    fn t_formatting() {
        let p = TPolynomial::from_ints(&[1, 0, 3]);
        assert_eq!(p.to_string(), "3*t^2+1");
        assert_eq!(p.pretty(), "3t^2 + 1");
        assert_eq!(TPolynomial::from_ints(&[0, -1]).to_string(), "-t");
        assert_eq!(TPolynomial::zero().to_string(), "0");
        assert_eq!(tp("3t^2 + 1"), p);
        assert_eq!(tp("-t+2"), TPolynomial::from_ints(&[2, -1]));
        assert_eq!(tp("1/2*t").to_string(), "1/2*t");
        assert!("t^".parse::<TPolynomial>().is_err());
        assert!("x".parse::<TPolynomial>().is_err());
    }

    #[test]
    fn t_division_and_gcd() {
        let a = tp("t^2-1");
        let b = tp("t+1");
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, tp("t-1"));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&tp("2t+2")), tp("t+1"));
        assert!(a.div_rem(&TPolynomial::zero()).is_err());
    }

    fn arb_t() -> impl Strategy<Value = TPolynomial> {
        prop::collection::vec(-5i64..5, 0..5).prop_map(|v| TPolynomial::from_ints(&v))
    }

    proptest! {
        #[test]
        fn t_string_round_trip(p in arb_t()) {
            prop_assert_eq!(p.to_string().parse::<TPolynomial>().unwrap(), p.clone());
            prop_assert_eq!(p.pretty().parse::<TPolynomial>().unwrap(), p);
        }

        #[test]
        fn t_division_identity(a in arb_t(), b in arb_t()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn root_product_divides(c1 in prop::collection::vec(-2i32..3, 3), c2 in prop::collection::vec(-2i32..3, 3)) {
            let l1 = RootPolynomial::linear(&c1);
            let l2 = RootPolynomial::linear(&c2);
            prop_assume!(!l1.is_zero() && !l2.is_zero());
            let p = &l1 * &l2;
            prop_assert_eq!(p.div_linear(&l1).unwrap(), l2);
        }
    }
}
