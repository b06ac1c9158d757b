//! Integer polynomials for fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::TPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self(vec![BigInt::one()])
    }

    fn trim(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Self(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trim(v)
    }

    /// `self * a - other * b`.
    pub fn cross(&self, a: &ZPoly, other: &ZPoly, b: &ZPoly) -> ZPoly {
        let x = self.mul(a);
        let y = other.mul(b);
        let n = x.0.len().max(y.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (k, c) in x.0.into_iter().enumerate() {
            v[k] += c;
        }
        for (k, c) in y.0.into_iter().enumerate() {
            v[k] -= c;
        }
        Self::trim(v)
    }

    /// Quotient when `d` divides `self` exactly in `Z[t]`.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.0.len().checked_sub(1)?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.0.len() == 1 && d.0[0].is_one() {
            return Some(self.clone());
        }
        let lead = &d.0[dd];
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::trim(quot))
    }

    pub fn to_t(&self) -> TPolynomial {
        TPolynomial::from_coeffs(self.0.iter().cloned().map(BigRational::from_integer).collect())
    }
}

/// Rows scaled by nonzero rationals to integer coefficients.
pub(crate) fn integer_rows<'a, I>(rows: I) -> Vec<Vec<ZPoly>>
where
    I: IntoIterator<Item = Vec<&'a TPolynomial>>,
{
    rows.into_iter()
        .map(|row| {
            let mut den = BigInt::one();
            let mut num = BigInt::zero();
            for c in row.iter().flat_map(|x| x.coeffs()) {
                if !c.is_zero() {
                    den = den.lcm(c.denom());
                    num = num.gcd(c.numer());
                }
            }
            if num.is_zero() {
                num = BigInt::one();
            }
            row.iter()
                .map(|x| {
                    ZPoly::trim(
                        x.coeffs()
                            .iter()
                            .map(|c| (c.numer() * (&den / c.denom())) / &num)
                            .collect(),
                    )
                })
                .collect()
        })
        .collect()
}
