use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::truncated::TruncatedSeries;
use crate::error::{Error, Result};

/// A polynomial with big-integer coefficients, lowest degree first and no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `p(x^2)`.
    pub fn sub_x2(&self) -> Self {
        let mut coeffs = vec![BigInt::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `x^e`; the caller guarantees the low coefficients vanish.
    fn unshift(&self, e: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(e).all(Zero::is_zero));
        Poly::new(self.coeffs.iter().skip(e).cloned().collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries::new(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{a}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

/// The polynomial `p_k` with `p_0 = p_1 = 1` and `p_{k+1} = p_k - x p_{k-1}`.
///
/// It is the Chebyshev polynomial of the second kind with denominators
/// cleared: `U_k(1/(2x)) = p_k(x^2) / x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebPoly {
    pub k: usize,
    pub poly: Poly,
}

pub fn cheb_p(k: usize) -> ChebPoly {
    ChebPoly { k, poly: cheb_poly(k as i64) }
}

/// `p_k` for any `k >= -1`, with `p_{-1} = 0`.
pub(crate) fn cheb_poly(k: i64) -> Poly {
    assert!(k >= -1, "p_k is defined for k >= -1");
    if k == -1 {
        return Poly::zero();
    }
    let x = Poly::monomial(1);
    let (mut prev, mut cur) = (Poly::one(), Poly::one());
    for _ in 1..k {
        let next = &cur - &(&x * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `x^shift * num / den` with integer `shift` of either sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub num: Poly,
    pub den: Poly,
    pub shift: i64,
}

impl RationalGF {
    pub fn new(num: Poly, den: Poly, shift: i64) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        RationalGF { num, den, shift }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::one(), 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(c)))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    /// `x^e` for any integer `e`.
    pub fn x_pow(e: i64) -> Self {
        Self::new(Poly::one(), Poly::one(), e)
    }

    /// `U_j(1/(2x)) = p_j(x^2) / x^j`, with `U_{-1} = 0`.
    pub fn u(j: i64) -> Self {
        Self::new(cheb_poly(j).sub_x2(), Poly::one(), -j)
    }

    /// `R_k(y) = p_{k-1}(y) / p_k(y)` at `y = x` or `y = x^2`.
    pub fn r(k: usize, squared: bool) -> Self {
        let (num, den) = (cheb_poly(k as i64 - 1), cheb_poly(k as i64));
        if squared {
            Self::new(num.sub_x2(), den.sub_x2(), 0)
        } else {
            Self::new(num, den, 0)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Moves powers of `x` out of both polynomials into `shift`.
    pub fn normalized(&self) -> Self {
        if self.num.is_zero() {
            return RationalGF::zero();
        }
        let vn = self.num.valuation().unwrap_or(0);
        let vd = self.den.valuation().expect("nonzero denominator");
        RationalGF {
            num: self.num.unshift(vn),
            den: self.den.unshift(vd),
            shift: self.shift + vn as i64 - vd as i64,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::InvalidParams("reciprocal of the zero function".into()));
        }
        Ok(RationalGF::new(self.den.clone(), self.num.clone(), -self.shift))
    }

    pub fn pow(&self, e: usize) -> Self {
        RationalGF::new(self.num.pow(e), self.den.pow(e), self.shift * e as i64)
    }

    /// Power-series expansion through `x^order`.
    ///
    /// Fails with `NegativeValuation` when the function has a pole at 0 and
    /// with `NonUnitConstant` when the reduced denominator does not start
    /// with `+-1`.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let r = self.normalized();
        if r.num.is_zero() {
            return Ok(TruncatedSeries::zero(order));
        }
        if r.shift < 0 {
            return Err(Error::NegativeValuation { exponent: r.shift });
        }
        let shift = r.shift as usize;
        if shift > order {
            return Ok(TruncatedSeries::zero(order));
        }
        let inner = order - shift;
        let quotient = &r.num.to_series(inner) * &r.den.to_series(inner).reciprocal()?;
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(quotient.coeffs().iter().cloned());
        Ok(TruncatedSeries::new(coeffs))
    }

    fn aligned(&self, rhs: &RationalGF) -> (Poly, Poly, i64) {
        let shift = self.shift.min(rhs.shift);
        let a = self.num.shift((self.shift - shift) as usize);
        let b = rhs.num.shift((rhs.shift - shift) as usize);
        (&a * &rhs.den, &b * &self.den, shift)
    }
}

impl Add for &RationalGF {
    type Output = RationalGF;
    fn add(self, rhs: &RationalGF) -> RationalGF {
        let (a, b, shift) = self.aligned(rhs);
        RationalGF::new(&a + &b, &self.den * &rhs.den, shift)
    }
}

impl Sub for &RationalGF {
    type Output = RationalGF;
    fn sub(self, rhs: &RationalGF) -> RationalGF {
        let (a, b, shift) = self.aligned(rhs);
        RationalGF::new(&a - &b, &self.den * &rhs.den, shift)
    }
}

impl Mul for &RationalGF {
    type Output = RationalGF;
    fn mul(self, rhs: &RationalGF) -> RationalGF {
        RationalGF::new(&self.num * &rhs.num, &self.den * &rhs.den, self.shift + rhs.shift)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} * ({}) / ({})", self.shift, self.num, self.den)
    }
}

/// Series of `R_k(x)` to `order`, computed as `p_{k-1}/p_k` and checked
/// against `R_1 = 1`, `R_k = 1/(1 - x R_{k-1})`.
pub fn rk_series(k: usize, order: usize) -> TruncatedSeries {
    assert!(k >= 1, "R_k is defined for k >= 1");
    let closed = RationalGF::r(k, false).expand(order).expect("p_k(0) = 1");
    let x = TruncatedSeries::monomial(1, order);
    let mut rec = TruncatedSeries::one(order);
    for _ in 2..=k {
        rec = (&TruncatedSeries::one(order) - &(&x * &rec)).reciprocal().expect("unit constant term");
    }
    assert_eq!(closed, rec, "the two computations of R_{k} disagree");
    closed
}
