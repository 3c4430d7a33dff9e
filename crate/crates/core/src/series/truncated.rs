use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A power series known exactly up to `x^order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_unsigned(coeffs: Vec<BigUint>) -> Self {
        Self::new(coeffs.into_iter().map(BigInt::from).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigInt::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// `x^e` truncated at `order` (zero when `e > order`).
    pub fn monomial(e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = BigInt::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> &BigInt {
        &self.coeffs[e]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigInt::zero());
        Self::new(coeffs)
    }

    /// Multiplies by `x^e`, keeping the order.
    pub fn shift(&self, e: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate().take((order + 1).saturating_sub(e)) {
            out.coeffs[i + e] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant);
        }
        let n = self.order();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        for m in 1..=n {
            let s: BigInt = (1..=m).map(|i| &self.coeffs[i] * &out[m - i]).sum();
            out.push(-(s * c0));
        }
        Ok(Self::new(out))
    }

    /// `a(x^2)`, keeping the order.
    pub fn sub_x2(&self) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate().take(order / 2 + 1) {
            out.coeffs[2 * i] = c.clone();
        }
        out
    }

    /// Coefficients as nonnegative integers, if none is negative.
    pub fn to_unsigned(&self) -> Option<Vec<BigUint>> {
        self.coeffs.iter().map(|c| c.to_biguint()).collect()
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        json!({ "order": self.order(), "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Malformed("series JSON must be {\"order\": N, \"coeffs\": [decimal strings]}".into());
        let order = v.get("order").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|c| c.as_str().and_then(|s| s.parse::<BigInt>().ok()).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != order + 1 {
            return Err(bad());
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", text.join(", "))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|m| (0..=m).map(|i| &self.coeffs[i] * &rhs.coeffs[m - i]).sum())
            .collect();
        TruncatedSeries::new(coeffs)
    }
}

pub fn ps_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a + b
}

pub fn ps_sub(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a - b
}

pub fn ps_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a * b
}

pub fn ps_reciprocal(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.reciprocal()
}

pub fn ps_sub_x2(a: &TruncatedSeries) -> TruncatedSeries {
    a.sub_x2()
}

/// Catalan numbers `C_0..=C_order` from `C_{n+1} = sum C_i C_{n-i}`.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for n in 0..order {
        let next = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    TruncatedSeries::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64(c)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&s(&[1, 1]) * &s(&[1, 1]), s(&[1, 2]));
        assert_eq!(&s(&[1, 1, 0]) * &s(&[1, 1, 0]), s(&[1, 2, 1]));
        assert!((&s(&[3, -1, 4]) + &-&s(&[3, -1, 4])).is_zero());
        assert_eq!(&s(&[1, 1, 1, 1]) * &s(&[1, -1, 0, 0]), s(&[1, 0, 0, 0]));
        assert_eq!(&s(&[1, 2, 3]) - &s(&[1, 1]), s(&[0, 1]));
        assert_eq!(s(&[1, 2, 3]).shift(1), s(&[0, 1, 2]));
    }

    #[test]
    fn reciprocals() {
        assert_eq!(s(&[1, -1, 0, 0, 0]).reciprocal().unwrap(), s(&[1, 1, 1, 1, 1]));
        assert_eq!(s(&[1, -1, -1, 0, 0, 0]).reciprocal().unwrap(), s(&[1, 1, 2, 3, 5, 8]));
        assert_eq!(s(&[-1, 1, 0]).reciprocal().unwrap(), s(&[-1, -1, -1]));
        assert_eq!(s(&[2, 1]).reciprocal(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn substitution_and_catalan() {
        assert_eq!(s(&[1, 1, 2, 0, 0]).sub_x2(), s(&[1, 0, 1, 0, 2]));
        assert_eq!(s(&[0, 1, 0]).sub_x2(), s(&[0, 0, 1]));
        assert_eq!(catalan_series(4), s(&[1, 1, 2, 5, 14]));
        assert_eq!(catalan_series(10).coeff(10), &BigInt::from(16796));
        assert_eq!(catalan_series(6).sub_x2(), s(&[1, 0, 1, 0, 2, 0, 5]));
    }

    #[test]
    fn json_round_trip() {
        let a = catalan_series(30);
        assert_eq!(TruncatedSeries::from_json(&a.to_json()).unwrap(), a);
        assert_eq!(a.to_json()["coeffs"][30], "3814986502092304");
    }
}
