//! Permutations, involutions, pattern specifications and occurrence counting.
//!
//! Values are stored 1-based: a permutation of length `n` holds each of
//! `1..=n` exactly once. The empty permutation is valid and is an involution.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation(format!("value {v} is outside 1..={n}")));
            }
            if seen[v] {
                return Err(Error::NotAPermutation(format!("value {v} appears twice")));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// Caller guarantees `values` is a bijection of `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    pub fn is_involution(&self) -> bool {
        is_involution_slice(&self.values)
    }

    /// Compact digit form, only available when every value is a single digit.
    pub fn to_compact(&self) -> Option<String> {
        if self.len() > 9 {
            return None;
        }
        Some(self.values.iter().map(|v| v.to_string()).collect())
    }

    /// Adds `offset` to every value (the result is a sequence, not a permutation
    /// of `1..=n`, so it is returned as a plain vector).
    pub(crate) fn shifted(&self, offset: usize) -> Vec<usize> {
        self.values.iter().map(|v| v + offset).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

/// Parses whitespace-separated values, or a single run of digits when every
/// value is below 10 (`"132"`).
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let values: Vec<usize> = if tokens.len() == 1 && tokens[0].len() > 1 {
        tokens[0]
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Malformed(format!("unexpected character {c:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        tokens
            .iter()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Malformed(format!("bad token {t:?}"))))
            .collect::<Result<_>>()?
    };
    Permutation::new(values)
}

pub(crate) fn is_involution_slice(values: &[usize]) -> bool {
    values.iter().enumerate().all(|(i, &v)| values[v - 1] == i + 1)
}

/// A permutation known to be its own inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Involution(Permutation);

impl Involution {
    pub fn new(p: Permutation) -> Result<Self> {
        if p.is_involution() {
            Ok(Involution(p))
        } else {
            Err(Error::NotAnInvolution(p.to_string()))
        }
    }

    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        Involution::new(Permutation::new(values)?)
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(is_involution_slice(&values));
        Involution(Permutation::from_vec_unchecked(values))
    }

    pub fn empty() -> Self {
        Involution(Permutation::empty())
    }

    pub fn fixed_point_count(&self) -> usize {
        fixed_points(self.values())
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn into_permutation(self) -> Permutation {
        self.0
    }
}

impl Deref for Involution {
    type Target = Permutation;
    fn deref(&self) -> &Permutation {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for Involution {
    type Error = Error;
    fn try_from(values: Vec<usize>) -> Result<Self> {
        Involution::from_values(values)
    }
}

impl From<Involution> for Vec<usize> {
    fn from(p: Involution) -> Self {
        p.0.values
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Involution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Involution::new(parse_permutation(s)?)
    }
}

pub fn is_involution(p: &Permutation) -> bool {
    p.is_involution()
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn fixed_point_count(p: &Involution) -> usize {
    p.fixed_point_count()
}

pub(crate) fn fixed_points(values: &[usize]) -> usize {
    values.iter().enumerate().filter(|&(i, &v)| v == i + 1).count()
}

/// Precomputed order constraints for matching one pattern.
///
/// When the j-th pattern entry is placed, the candidate value must lie strictly
/// between the values already matched to its nearest pattern neighbours below
/// and above. That keeps every prefix order-isomorphic without rescanning it.
#[derive(Debug, Clone)]
pub struct PatternMatcher {
    len: usize,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    monotone: Option<Monotone>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Monotone {
    Increasing,
    Decreasing,
}

impl PatternMatcher {
    pub fn new(tau: &[usize]) -> Self {
        let k = tau.len();
        let mut below = Vec::with_capacity(k);
        let mut above = Vec::with_capacity(k);
        for j in 0..k {
            let lo = (0..j).filter(|&t| tau[t] < tau[j]).max_by_key(|&t| tau[t]);
            let hi = (0..j).filter(|&t| tau[t] > tau[j]).min_by_key(|&t| tau[t]);
            below.push(lo);
            above.push(hi);
        }
        let monotone = if k >= 2 && tau.windows(2).all(|w| w[0] < w[1]) {
            Some(Monotone::Increasing)
        } else if k >= 2 && tau.windows(2).all(|w| w[0] > w[1]) {
            Some(Monotone::Decreasing)
        } else {
            None
        };
        PatternMatcher { len: k, below, above, monotone }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of occurrences in `p`, counting stops once it exceeds `cap`.
    pub fn count_capped(&self, p: &[usize], cap: u64) -> u64 {
        if self.len == 0 {
            return 1;
        }
        if self.len > p.len() {
            return 0;
        }
        let mut chosen = vec![0usize; self.len];
        let mut count = 0u64;
        self.descend(p, 0, 0, &mut chosen, &mut count, cap);
        count
    }

    pub fn count(&self, p: &[usize]) -> u64 {
        self.count_capped(p, u64::MAX)
    }

    pub fn occurs_in(&self, p: &[usize]) -> bool {
        if self.len == 0 {
            return true;
        }
        match self.monotone {
            Some(Monotone::Increasing) => longest_increasing(p.iter().copied()) >= self.len,
            Some(Monotone::Decreasing) => longest_increasing(p.iter().rev().copied()) >= self.len,
            None => self.count_capped(p, 0) > 0,
        }
    }

    /// Returns true once the count exceeds `cap`.
    fn descend(
        &self,
        p: &[usize],
        j: usize,
        start: usize,
        chosen: &mut [usize],
        count: &mut u64,
        cap: u64,
    ) -> bool {
        let last = p.len() - (self.len - j);
        for i in start..=last {
            let v = p[i];
            if let Some(t) = self.below[j] {
                if v < chosen[t] {
                    continue;
                }
            }
            if let Some(t) = self.above[j] {
                if v > chosen[t] {
                    continue;
                }
            }
            chosen[j] = v;
            if j + 1 == self.len {
                *count += 1;
                if *count > cap {
                    return true;
                }
            } else if self.descend(p, j + 1, i + 1, chosen, count, cap) {
                return true;
            }
        }
        false
    }
}

/// Length of the longest strictly increasing subsequence (patience sorting).
fn longest_increasing(values: impl Iterator<Item = usize>) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for v in values {
        match tails.binary_search(&v) {
            Ok(_) => {}
            Err(pos) if pos == tails.len() => tails.push(v),
            Err(pos) => tails[pos] = v,
        }
    }
    tails.len()
}

pub fn occurrences(p: &Permutation, tau: &Permutation) -> BigUint {
    BigUint::from(PatternMatcher::new(tau.values()).count(p.values()))
}

pub fn avoids(p: &Permutation, tau: &Permutation) -> bool {
    !PatternMatcher::new(tau.values()).occurs_in(p.values())
}

/// Which of the two double-wedge shapes to build from a wedge `sigma`.
///
/// `C` is the third shape accepted by the extended wedge family,
/// `(sigma + l, 2l, sigma, l)`; it is not a double-wedge itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DwForm {
    A,
    B,
    C,
}

/// A pattern, literal or drawn from one of the parameterised families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternSpec {
    Literal(Permutation),
    /// `12...k`
    Incr(usize),
    /// `2134...k`
    M213(usize),
    /// `23...k1`
    Cycle(usize),
    /// `[k,d] = (d+1)(d+2)...k 1 2...d`
    Kd { k: usize, d: usize },
    /// Double-wedge of length `2l` built from the wedge `sigma`, optionally
    /// followed by `2l+1, ..., tail_k`.
    Dw { l: usize, sigma: Permutation, form: DwForm, tail_k: Option<usize> },
}

impl PatternSpec {
    pub fn materialize(&self) -> Result<Permutation> {
        match self {
            PatternSpec::Literal(p) => Ok(p.clone()),
            PatternSpec::Incr(k) => {
                if *k == 0 {
                    return Err(Error::InvalidParams("incr needs k >= 1".into()));
                }
                Ok(Permutation::identity(*k))
            }
            PatternSpec::M213(k) => {
                if *k < 2 {
                    return Err(Error::InvalidParams("m213 needs k >= 2".into()));
                }
                let mut v: Vec<usize> = (1..=*k).collect();
                v.swap(0, 1);
                Ok(Permutation::from_vec_unchecked(v))
            }
            PatternSpec::Cycle(k) => {
                if *k < 2 {
                    return Err(Error::InvalidParams("cycle needs k >= 2".into()));
                }
                let mut v: Vec<usize> = (2..=*k).collect();
                v.push(1);
                Ok(Permutation::from_vec_unchecked(v))
            }
            PatternSpec::Kd { k, d } => {
                if *k < 2 || *d == 0 || 2 * d > *k {
                    return Err(Error::InvalidParams(format!(
                        "kd needs k >= 2 and 1 <= d <= k/2, got k={k}, d={d}"
                    )));
                }
                let v: Vec<usize> = (d + 1..=*k).chain(1..=*d).collect();
                Ok(Permutation::from_vec_unchecked(v))
            }
            PatternSpec::Dw { l, sigma, form, tail_k } => {
                if *l == 0 {
                    return Err(Error::InvalidParams("dw needs l >= 1".into()));
                }
                if sigma.len() + 1 != *l {
                    return Err(Error::InvalidParams(format!(
                        "dw with l={l} needs sigma of length {}",
                        l - 1
                    )));
                }
                if !is_wedge(sigma) {
                    return Err(Error::InvalidParams(format!("{sigma} is not a wedge pattern")));
                }
                let mut tau = double_wedge_from(sigma, *form);
                if let Some(k) = tail_k {
                    if *k < 2 * l {
                        return Err(Error::InvalidParams(format!("tail k={k} is below 2l={}", 2 * l)));
                    }
                    tau.extend(2 * l + 1..=*k);
                }
                Ok(Permutation::from_vec_unchecked(tau))
            }
        }
    }

    /// Length of the materialized pattern, if the parameters are valid.
    pub fn pattern_len(&self) -> Result<usize> {
        self.materialize().map(|p| p.len())
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Literal(p) => match p.to_compact() {
                Some(c) => write!(f, "lit:{c}"),
                None => write!(f, "lit:{p}"),
            },
            PatternSpec::Incr(k) => write!(f, "incr:{k}"),
            PatternSpec::M213(k) => write!(f, "m213:{k}"),
            PatternSpec::Cycle(k) => write!(f, "cycle:{k}"),
            PatternSpec::Kd { k, d } => write!(f, "kd:{k},{d}"),
            PatternSpec::Dw { l, sigma, form, tail_k } => {
                let s = if sigma.is_empty() {
                    "-".to_string()
                } else {
                    sigma.to_compact().unwrap_or_else(|| sigma.to_string())
                };
                write!(f, "dw:{l},{s},{form:?}")?;
                if let Some(k) = tail_k {
                    write!(f, ",{k}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Malformed(format!("pattern spec {s:?} lacks a kind prefix")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Malformed(format!("bad number {t:?} in {s:?}")))
        };
        let spec = match kind {
            "lit" => PatternSpec::Literal(parse_permutation(rest)?),
            "incr" => PatternSpec::Incr(num(rest)?),
            "m213" => PatternSpec::M213(num(rest)?),
            "cycle" => PatternSpec::Cycle(num(rest)?),
            "kd" => {
                let (k, d) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Malformed(format!("kd spec {s:?} needs k,d")))?;
                PatternSpec::Kd { k: num(k)?, d: num(d)? }
            }
            "dw" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 && parts.len() != 4 {
                    return Err(Error::Malformed(format!("dw spec {s:?} needs l,sigma,form[,k]")));
                }
                let sigma_text = parts[1].trim();
                let sigma = if sigma_text.is_empty() || sigma_text == "-" {
                    Permutation::empty()
                } else {
                    parse_permutation(sigma_text)?
                };
                let form = match parts[2].trim() {
                    "A" | "a" => DwForm::A,
                    "B" | "b" => DwForm::B,
                    "C" | "c" => DwForm::C,
                    other => return Err(Error::Malformed(format!("unknown dw form {other:?}"))),
                };
                let tail_k = parts.get(3).map(|t| num(t)).transpose()?;
                PatternSpec::Dw { l: num(parts[0])?, sigma, form, tail_k }
            }
            other => return Err(Error::Malformed(format!("unknown pattern kind {other:?}"))),
        };
        spec.materialize()?;
        Ok(spec)
    }
}

pub fn materialize(spec: &PatternSpec) -> Result<Permutation> {
    spec.materialize()
}

fn double_wedge_from(sigma: &Permutation, form: DwForm) -> Vec<usize> {
    let l = sigma.len() + 1;
    let inv = sigma.inverse();
    let (head, tail) = match form {
        DwForm::A => (&inv, sigma),
        DwForm::B => (sigma, &inv),
        DwForm::C => (sigma, sigma),
    };
    let mut tau = head.shifted(l);
    tau.push(2 * l);
    tau.extend_from_slice(tail.values());
    tau.push(l);
    tau
}

/// All wedge patterns of length `m` (`m = 0` yields the empty pattern),
/// sorted lexicographically.
///
/// A wedge interleaves nonempty increasing runs `tau^1, ..., tau^r` that
/// together spell `s+1, ..., m` with pieces `rho^1, ..., rho^r` covering
/// `1..=s`. Each nonempty `rho^i` is an increasing run of consecutive values
/// and the value ranges of successive pieces descend, as in `645783912`
/// (`6 | 45 | 78 | 3 | 9 | 12`).
pub fn wedge_patterns(m: usize) -> Vec<Permutation> {
    if m == 0 {
        return vec![Permutation::empty()];
    }
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in 0..m {
        let t = m - s;
        for r in 1..=t {
            for runs in compositions(t, r) {
                for pieces in weak_compositions(s, r) {
                    let mut seq = Vec::with_capacity(m);
                    let mut next_top = s + 1;
                    let mut next_rho_top = s;
                    for (run, piece) in runs.iter().zip(&pieces) {
                        seq.extend(next_top..next_top + run);
                        next_top += run;
                        seq.extend(next_rho_top + 1 - piece..=next_rho_top);
                        next_rho_top -= piece;
                    }
                    out.insert(seq);
                }
            }
        }
    }
    out.into_iter().map(Permutation::from_vec_unchecked).collect()
}

pub fn is_wedge(p: &Permutation) -> bool {
    wedge_patterns(p.len()).binary_search(p).is_ok()
}

/// All distinct double-wedge patterns of length `2l` over both forms.
pub fn double_wedge_patterns(l: usize) -> Vec<Permutation> {
    if l == 0 {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    for sigma in wedge_patterns(l - 1) {
        for form in [DwForm::A, DwForm::B] {
            out.insert(double_wedge_from(&sigma, form));
        }
    }
    out.into_iter().map(Permutation::from_vec_unchecked).collect()
}

/// Compositions of `total` into exactly `parts` positive parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Compositions of `total` into exactly `parts` nonnegative parts.
fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
