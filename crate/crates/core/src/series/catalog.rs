//! Closed-form generating functions and the classes they count.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::{cheb_poly, Poly, RationalGF};
use super::truncated::{catalan_series, TruncatedSeries};
use crate::error::{Error, Result};
use crate::oracle::{count_series, ClassSpec, Limits, OccurrenceConstraint, Relation};
use crate::perm::{is_wedge, parse_permutation, DwForm, PatternSpec, Permutation};

macro_rules! catalog_names {
    ($($variant:ident => $text:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CatalogName {
            $($variant),*
        }

        impl CatalogName {
            pub const ALL: &'static [CatalogName] = &[$(CatalogName::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(CatalogName::$variant => $text),*
                }
            }
        }

        impl FromStr for CatalogName {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok(CatalogName::$variant),)*
                    _ => Err(Error::InvalidParams(format!("unknown generating function {s:?}"))),
                }
            }
        }
    };
}

catalog_names! {
    IEmpty => "I_EMPTY",
    IIncr => "I_INCR",
    IM213 => "I_M213",
    IKd => "I_KD",
    IDw => "I_DW",
    IDwTail => "I_DW_TAIL",
    SExtWedge => "S_EXT_WEDGE",
    I123_213 => "I_123_213",
    IR1Incr => "IR1_INCR",
    IR1M213 => "IR1_M213",
    IR1Cycle => "IR1_CYCLE",
    IRIncr => "IR_INCR",
    IR2Incr => "IR2_INCR",
    JEmpty => "J_EMPTY",
    JIncr => "J_INCR",
    JM213 => "J_M213",
    JCycle => "J_CYCLE",
    JKd => "J_KD",
    JR1Incr => "JR1_INCR",
    JR1Cycle => "JR1_CYCLE",
    JR1M213 => "JR1_M213",
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters of a catalog entry. Unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Params {
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub l: Option<usize>,
    pub r: Option<usize>,
    /// Wedge pattern of length `l - 1` for the double-wedge entries; defaults
    /// to the identity.
    pub sigma: Option<Permutation>,
    pub form: Option<DwForm>,
    /// Which of two equinumerous classes an entry counts (1 or 2).
    pub variant: Option<usize>,
}

impl Params {
    pub fn k(k: usize) -> Self {
        Params { k: Some(k), ..Params::default() }
    }

    pub fn kd(k: usize, d: usize) -> Self {
        Params { k: Some(k), d: Some(d), ..Params::default() }
    }

    pub fn kr(k: usize, r: usize) -> Self {
        Params { k: Some(k), r: Some(r), ..Params::default() }
    }

    pub fn wedge(l: usize, sigma: Permutation, form: DwForm, k: Option<usize>) -> Self {
        Params { k, l: Some(l), sigma: Some(sigma), form: Some(form), ..Params::default() }
    }

    fn need(v: Option<usize>, name: &str) -> Result<usize> {
        v.ok_or_else(|| Error::InvalidParams(format!("parameter {name} is required")))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [("k", self.k), ("d", self.d), ("l", self.l), ("r", self.r)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(s) = &self.sigma {
            parts.push(format!("sigma={}", s.to_compact().unwrap_or_else(|| s.to_string())));
        }
        if let Some(form) = self.form {
            parts.push(format!("form={form:?}"));
        }
        if let Some(v) = self.variant {
            parts.push(format!("variant={v}"));
        }
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Params {
    type Err = Error;
    /// Parses `k=5,d=2`; `sigma` takes a digit string or `-` for the empty
    /// wedge and `form` takes `A`, `B` or `C`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Params::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("parameter {item:?} is not key=value")))?;
            let num = || value.parse::<usize>().map_err(|_| Error::Malformed(format!("bad value for {key}: {value:?}")));
            match key {
                "k" => p.k = Some(num()?),
                "d" => p.d = Some(num()?),
                "l" => p.l = Some(num()?),
                "r" => p.r = Some(num()?),
                "variant" => p.variant = Some(num()?),
                "sigma" if value == "-" || value.is_empty() => p.sigma = Some(Permutation::empty()),
                "sigma" => p.sigma = Some(parse_permutation(value)?),
                "form" => {
                    p.form = Some(match value {
                        "A" => DwForm::A,
                        "B" => DwForm::B,
                        "C" => DwForm::C,
                        _ => return Err(Error::Malformed(format!("form must be A, B or C, got {value:?}"))),
                    })
                }
                _ => return Err(Error::Malformed(format!("unknown parameter {key:?}"))),
            }
        }
        Ok(p)
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg()))
    }
}

fn k_at_least(p: &Params, min: usize) -> Result<usize> {
    let k = Params::need(p.k, "k")?;
    check(k >= min, || format!("k must be at least {min}, got {k}"))?;
    Ok(k)
}

fn kd_params(p: &Params, min_k: usize, min_d: usize) -> Result<(usize, usize)> {
    let k = k_at_least(p, min_k)?;
    let d = Params::need(p.d, "d")?;
    check(d >= min_d && 2 * d <= k, || format!("d must satisfy {min_d} <= d <= k/2, got k={k}, d={d}"))?;
    Ok((k, d))
}

/// `(l, sigma, form)` with `sigma` a wedge of length `l - 1`.
fn wedge_params(p: &Params, allow_c: bool) -> Result<(usize, Permutation, DwForm)> {
    let l = Params::need(p.l, "l")?;
    check(l >= 1, || "l must be at least 1".into())?;
    let sigma = p.sigma.clone().unwrap_or_else(|| Permutation::identity(l - 1));
    check(sigma.len() + 1 == l, || format!("sigma must have length l-1 = {}", l - 1))?;
    check(is_wedge(&sigma), || format!("sigma = {sigma} is not a wedge pattern"))?;
    let form = p.form.unwrap_or(DwForm::A);
    check(allow_c || form != DwForm::C, || "form C is only meaningful for S_EXT_WEDGE".into())?;
    Ok((l, sigma, form))
}

fn u(j: i64) -> RationalGF {
    RationalGF::u(j)
}

fn x_pow(e: i64) -> RationalGF {
    RationalGF::x_pow(e)
}

fn sum_u(from: i64, to: i64) -> RationalGF {
    (from..=to).fold(RationalGF::zero(), |acc, j| &acc + &u(j))
}

fn one_minus_x() -> RationalGF {
    RationalGF::from_poly(Poly::from_i64(&[1, -1]))
}

fn div(a: &RationalGF, b: &RationalGF) -> Result<RationalGF> {
    Ok(a * &b.recip()?)
}

/// `R_k(x^2)`, with `R_0` read as the constant 1.
fn r2(k: usize) -> RationalGF {
    if k == 0 {
        RationalGF::constant(1)
    } else {
        RationalGF::r(k, true)
    }
}

fn i_incr_closed(k: usize) -> Result<RationalGF> {
    div(&sum_u(0, k as i64 - 1), &(&x_pow(1) * &u(k as i64)))
}

fn j_incr_closed(k: usize) -> Result<RationalGF> {
    div(&(&x_pow(1) * &sum_u(1, k as i64 - 2)), &u(k as i64))
}

/// Generating function of 132-avoiding permutations containing `12...j`
/// exactly `a` times, to `order`.
///
/// For `1 <= a <= j` this is `x^(j+a-1) p_{j-1}^(a-1) / p_j^(a+1)`; larger `a`
/// are counted by the permutation oracle.
pub fn s_incr_exactly(j: usize, a: usize, order: usize) -> Result<TruncatedSeries> {
    check(j >= 1 && a >= 1, || "S^a_j needs j >= 1 and a >= 1".into())?;
    if a <= j {
        let num = cheb_poly(j as i64 - 1).pow(a - 1);
        let den = cheb_poly(j as i64).pow(a + 1);
        return RationalGF::new(num, den, (j + a - 1) as i64).expand(order);
    }
    let class = ClassSpec::permutations(Relation::Avoid, vec![OccurrenceConstraint::exactly(PatternSpec::Incr(j), a as u64)]);
    count_series(&class, order, &Limits::default())
}

fn central_binomial(r: usize) -> BigInt {
    (0..r / 2).fold(BigInt::from(1), |acc, i| acc * BigInt::from(r - i) / BigInt::from(i + 1))
}

/// `I^r_{12...k}` from the recurrence
/// `I^r_k (1 - x^2 R_{k-1}(x^2)) = x I^r_{k-1} + x^2 sum_{a>=1} S^a_{k-1}(x^2) I^{r-2a}_k`.
fn ir_incr(k: usize, r: usize, order: usize, memo: &mut HashMap<(usize, usize), TruncatedSeries>) -> Result<TruncatedSeries> {
    if let Some(s) = memo.get(&(k, r)) {
        return Ok(s.clone());
    }
    let series = if r == 0 {
        i_incr_closed(k)?.expand(order)?
    } else if k == 1 {
        let mut s = TruncatedSeries::zero(order);
        if r <= order {
            s = &s + &TruncatedSeries::monomial(r, order).scale(&central_binomial(r));
        }
        s
    } else {
        let x = TruncatedSeries::monomial(1, order);
        let x2 = TruncatedSeries::monomial(2, order);
        let mut rhs = &x * &ir_incr(k - 1, r, order, memo)?;
        for a in 1..=r / 2 {
            let s = s_incr_exactly(k - 1, a, order / 2)?.truncate(order).sub_x2();
            let term = &(&x2 * &s) * &ir_incr(k, r - 2 * a, order, memo)?;
            rhs = &rhs + &term;
        }
        let left = &TruncatedSeries::one(order) - &(&x2 * &r2(k - 1).expand(order)?);
        &rhs * &left.reciprocal()?
    };
    memo.insert((k, r), series.clone());
    Ok(series)
}

/// `I_{12...k}` from `I_k = R_k(x^2) + x R_k(x^2) I_{k-1}` with `I_1 = 1`.
pub fn i_incr_recurrence(k: usize, order: usize) -> Result<TruncatedSeries> {
    check(k >= 1, || "k must be at least 1".into())?;
    let x = TruncatedSeries::monomial(1, order);
    let mut acc = TruncatedSeries::one(order);
    for j in 2..=k {
        let r = r2(j).expand(order)?;
        acc = &r + &(&(&x * &r) * &acc);
    }
    Ok(acc)
}

/// `J_{12...k}` from `J_k = x R_k(x^2) J_{k-1} + x^3 R_{k-1}(x^2) R_k(x^2)`
/// with `J_1 = J_2 = 0`.
pub fn j_incr_recurrence(k: usize, order: usize) -> Result<TruncatedSeries> {
    check(k >= 1, || "k must be at least 1".into())?;
    let x = TruncatedSeries::monomial(1, order);
    let x3 = TruncatedSeries::monomial(3, order);
    let mut acc = TruncatedSeries::zero(order);
    for j in 3..=k {
        let (rj, rj1) = (r2(j).expand(order)?, r2(j - 1).expand(order)?);
        acc = &(&(&x * &rj) * &acc) + &(&(&x3 * &rj1) * &rj);
    }
    Ok(acc)
}

/// `I_{T'} = 1/(1 - x^2 S_T(x^2)) + x/(1 - x^2 S_T(x^2)) I_T` where `T'`
/// appends a new maximum to every pattern of `T`.
pub fn thg_combine(s_t: &TruncatedSeries, i_t: &TruncatedSeries) -> Result<TruncatedSeries> {
    if s_t.order() != i_t.order() {
        return Err(Error::InvalidParams("series must have the same order".into()));
    }
    let order = s_t.order();
    let x = TruncatedSeries::monomial(1, order);
    let x2 = TruncatedSeries::monomial(2, order);
    let inv = (&TruncatedSeries::one(order) - &(&x2 * &s_t.sub_x2())).reciprocal()?;
    Ok(&inv + &(&(&x * &inv) * i_t))
}

/// Truncated series of the named closed form.
pub fn gf_catalog(name: CatalogName, p: &Params, order: usize) -> Result<TruncatedSeries> {
    use CatalogName::*;
    let rat = |r: Result<RationalGF>| r.and_then(|r| r.expand(order));
    match name {
        IEmpty | JEmpty => {
            let c2 = catalan_series(order).sub_x2();
            let x = TruncatedSeries::monomial(1, order);
            let x2 = TruncatedSeries::monomial(2, order);
            let base = (&(&TruncatedSeries::one(order) - &x) - &(&x2 * &c2)).reciprocal()?;
            if name == IEmpty {
                Ok(base)
            } else {
                Ok(&(&TruncatedSeries::monomial(3, order) * &c2) * &base)
            }
        }
        IIncr => rat(i_incr_closed(k_at_least(p, 1)?)),
        IM213 => rat(i_incr_closed(k_at_least(p, 2)?)),
        IKd => {
            let (k, d) = kd_params(p, 2, 1)?;
            let (k, d) = (k as i64, d as i64);
            let tail = div(&(&u(k - 2 * d - 1) * &sum_u(0, k - d - 1)), &(&u(k - d) * &u(k - d - 1)))?;
            let bracket = &u(d - 1) + &tail;
            rat(div(&bracket, &(&x_pow(1) * &(&u(d) - &u(d - 1)))))
        }
        IDw => {
            let (l, _, _) = wedge_params(p, false)?;
            let r = r2(l);
            rat(div(&r, &(&RationalGF::constant(1) - &(&x_pow(1) * &r))))
        }
        IDwTail => {
            let (l, _, _) = wedge_params(p, false)?;
            let k = k_at_least(p, 2 * l)?;
            rat(i_incr_closed(k))
        }
        SExtWedge => {
            let (l, _, _) = wedge_params(p, true)?;
            let k = k_at_least(p, (2 * l).max(1))?;
            rat(Ok(RationalGF::r(k, false)))
        }
        I123_213 => {
            let k = k_at_least(p, 1)? as i64;
            let num = (0..k).fold(RationalGF::zero(), |acc, i| &acc + &x_pow(i));
            let den = (1..k).fold(RationalGF::constant(1), |acc, i| &acc - &x_pow(2 * i));
            rat(div(&num, &den))
        }
        IR1Incr => rat(u(k_at_least(p, 1)? as i64).recip()),
        IR1M213 => {
            let k = k_at_least(p, 2)? as i64;
            rat(div(&RationalGF::from_poly(Poly::from_i64(&[1, 0, -1])), &u(k)))
        }
        IR1Cycle => {
            let k = k_at_least(p, 2)? as i64;
            rat(div(&x_pow(3), &(&one_minus_x() * &u(k - 2))))
        }
        IRIncr => {
            let k = k_at_least(p, 1)?;
            let r = Params::need(p.r, "r")?;
            ir_incr(k, r, order, &mut HashMap::new())
        }
        IR2Incr => {
            let k = k_at_least(p, 1)? as i64;
            let mut sum = RationalGF::zero();
            for i in 1..=k {
                sum = &sum + &div(&sum_u(0, k - i), &(&u(k + 1 - i) * &u(k - i)))?;
            }
            rat(div(&sum, &u(k)))
        }
        JIncr => rat(j_incr_closed(k_at_least(p, 1)?)),
        JM213 => {
            let k = k_at_least(p, 3)? as i64;
            let bracket = &(&x_pow(1) * &u(2)) + &sum_u(2, k - 2);
            rat(div(&(&x_pow(1) * &bracket), &u(k)))
        }
        JCycle => {
            let k = k_at_least(p, 3)? as i64;
            let inner = &RationalGF::constant(1) + &div(&sum_u(1, k - 3), &u(k - 1))?;
            let head = div(&(&x_pow(2) * &u(k - 3)), &(&one_minus_x() * &u(k - 2)))?;
            rat(Ok(&head * &inner))
        }
        JKd => {
            let (k, d) = kd_params(p, 4, 2)?;
            let x2 = x_pow(2);
            let rd = r2(d);
            let head = div(&rd, &(&RationalGF::constant(1) - &(&x_pow(1) * &rd)))?;
            let diff = &r2(k - d - 1) - &r2(d - 1);
            let tail = div(&(&(&x2 * &diff) * &sum_u(1, k as i64 - d as i64 - 2)), &u((k - d) as i64))?;
            let bracket = &(&x2 * &r2(k - d - 1)) + &tail;
            rat(Ok(&head * &bracket))
        }
        JR1Incr => {
            k_at_least(p, 1)?;
            Ok(TruncatedSeries::zero(order))
        }
        JR1Cycle => {
            k_at_least(p, 2)?;
            Ok(TruncatedSeries::zero(order))
        }
        JR1M213 => {
            let k = k_at_least(p, 3)? as i64;
            rat(div(&RationalGF::from_poly(Poly::from_i64(&[0, 1, 0, -1])), &u(k)))
        }
    }
}

/// The class of objects whose counts the entry claims to enumerate.
pub fn catalog_class(name: CatalogName, p: &Params) -> Result<ClassSpec> {
    use CatalogName::*;
    let inv = |c132, extra| Ok(ClassSpec::involutions(c132, extra));
    let avoid = OccurrenceConstraint::avoid;
    let once = |t| OccurrenceConstraint::exactly(t, 1);
    let dw = |p: &Params, allow_c: bool, tail: Option<usize>| -> Result<PatternSpec> {
        let (l, sigma, form) = wedge_params(p, allow_c)?;
        Ok(PatternSpec::Dw { l, sigma, form, tail_k: tail })
    };
    match name {
        IEmpty => inv(Relation::Avoid, vec![]),
        IIncr => inv(Relation::Avoid, vec![avoid(PatternSpec::Incr(k_at_least(p, 1)?))]),
        IM213 => inv(Relation::Avoid, vec![avoid(PatternSpec::M213(k_at_least(p, 2)?))]),
        IKd => {
            let (k, d) = kd_params(p, 2, 1)?;
            inv(Relation::Avoid, vec![avoid(PatternSpec::Kd { k, d })])
        }
        IDw => inv(Relation::Avoid, vec![avoid(dw(p, false, None)?)]),
        IDwTail => {
            let l = Params::need(p.l, "l")?;
            let k = k_at_least(p, 2 * l)?;
            inv(Relation::Avoid, vec![avoid(dw(p, false, Some(k))?)])
        }
        SExtWedge => {
            let l = Params::need(p.l, "l")?;
            let k = k_at_least(p, (2 * l).max(1))?;
            Ok(ClassSpec::permutations(Relation::Avoid, vec![avoid(dw(p, true, Some(k))?)]))
        }
        I123_213 => {
            let k = k_at_least(p, 1)?;
            let lit = |v: Vec<usize>| PatternSpec::Literal(Permutation::new(v).expect("valid pattern"));
            match p.variant.unwrap_or(1) {
                1 => inv(Relation::Avoid, vec![avoid(PatternSpec::Incr(k)), avoid(lit(vec![2, 1, 3]))]),
                2 => {
                    let mut tau: Vec<usize> = (1..k).rev().collect();
                    tau.push(k);
                    inv(Relation::Avoid, vec![avoid(lit(tau)), avoid(lit(vec![1, 2, 3]))])
                }
                v => Err(Error::InvalidParams(format!("variant must be 1 or 2, got {v}"))),
            }
        }
        IR1Incr => inv(Relation::Avoid, vec![once(PatternSpec::Incr(k_at_least(p, 1)?))]),
        IR1M213 => inv(Relation::Avoid, vec![once(PatternSpec::M213(k_at_least(p, 2)?))]),
        IR1Cycle => inv(Relation::Avoid, vec![once(PatternSpec::Cycle(k_at_least(p, 2)?))]),
        IRIncr => {
            let k = k_at_least(p, 1)?;
            let r = Params::need(p.r, "r")?;
            inv(Relation::Avoid, vec![OccurrenceConstraint::exactly(PatternSpec::Incr(k), r as u64)])
        }
        IR2Incr => inv(Relation::Avoid, vec![OccurrenceConstraint::exactly(PatternSpec::Incr(k_at_least(p, 1)?), 2)]),
        JEmpty => inv(Relation::Eq(1), vec![]),
        JIncr => inv(Relation::Eq(1), vec![avoid(PatternSpec::Incr(k_at_least(p, 1)?))]),
        JM213 => inv(Relation::Eq(1), vec![avoid(PatternSpec::M213(k_at_least(p, 3)?))]),
        JCycle => inv(Relation::Eq(1), vec![avoid(PatternSpec::Cycle(k_at_least(p, 3)?))]),
        JKd => {
            let (k, d) = kd_params(p, 4, 2)?;
            inv(Relation::Eq(1), vec![avoid(PatternSpec::Kd { k, d })])
        }
        JR1Incr => inv(Relation::Eq(1), vec![once(PatternSpec::Incr(k_at_least(p, 1)?))]),
        JR1Cycle => inv(Relation::Eq(1), vec![once(PatternSpec::Cycle(k_at_least(p, 2)?))]),
        JR1M213 => inv(Relation::Eq(1), vec![once(PatternSpec::M213(k_at_least(p, 3)?))]),
    }
}
