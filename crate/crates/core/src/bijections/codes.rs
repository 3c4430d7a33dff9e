//! Word codings of three small involution classes.
//!
//! * `{132, 213}`: sequences of nonnegative integers, every part positive
//!   except possibly the last, summing to `n / 2`.
//! * `{132, 3412}`: words over `{a, bb}` of total length `n`.
//! * `{132, 123, 213}`: words over `{a, bb}` of total length `n / 2` for odd
//!   `n` and `n / 2 + 1` for even `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Involution, PatternMatcher};

fn check_avoids(values: &[usize], patterns: &[&[usize]], name: &str) -> Result<()> {
    if patterns.iter().any(|tau| PatternMatcher::new(tau).occurs_in(values)) {
        return Err(Error::NotInClass(format!("input does not avoid {name}")));
    }
    Ok(())
}

fn shifted(values: &[usize], by: usize) -> impl Iterator<Item = usize> + '_ {
    values.iter().map(move |&v| v + by)
}

fn unshifted(values: &[usize], by: usize) -> Vec<usize> {
    values.iter().map(|&v| v - by).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositionCode {
    parts: Vec<usize>,
}

impl CompositionCode {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        match parts.split_last() {
            None => Err(Error::Malformed("a composition code has at least one part".into())),
            Some((_, init)) if init.contains(&0) => {
                Err(Error::Malformed("only the last part of a composition code may be 0".into()))
            }
            Some(_) => Ok(CompositionCode { parts }),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All codes with the given total, in lexicographic order.
    pub fn all_with_total(total: usize) -> Vec<CompositionCode> {
        fn rec(left: usize, prefix: &mut Vec<usize>, out: &mut Vec<CompositionCode>) {
            prefix.push(left);
            out.push(CompositionCode { parts: prefix.clone() });
            prefix.pop();
            for first in 1..=left {
                prefix.push(first);
                rec(left - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(total, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.parts.cmp(&b.parts));
        out
    }
}

impl fmt::Display for CompositionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for CompositionCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Malformed(format!("bad code part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        CompositionCode::new(parts)
    }
}

pub fn code_213(inv: &Involution) -> Result<CompositionCode> {
    check_avoids(inv.values(), &[&[1, 3, 2], &[2, 1, 3]], "132 and 213")?;
    let mut parts = Vec::new();
    let mut cur = inv.values().to_vec();
    loop {
        let n = cur.len();
        if cur.iter().enumerate().all(|(i, &v)| v == i + 1) {
            parts.push(n / 2);
            return Ok(CompositionCode { parts });
        }
        let i = n + 1 - cur[0];
        parts.push(i);
        cur = unshifted(&cur[i..n - i], i);
    }
}

pub fn decode_213(code: &CompositionCode, n: usize) -> Result<Involution> {
    let (&last, blocks) = code.parts.split_last().expect("codes are nonempty");
    let outer: usize = blocks.iter().sum();
    if 2 * outer > n || (n - 2 * outer) / 2 != last {
        return Err(Error::InvalidParams(format!("code {code} does not describe an involution of length {n}")));
    }
    let mut out: Vec<usize> = (1..=n - 2 * outer).collect();
    for &i in blocks.iter().rev() {
        let m = out.len() + 2 * i;
        let mut next: Vec<usize> = (m + 1 - i..=m).collect();
        next.extend(shifted(&out, i));
        next.extend(1..=i);
        out = next;
    }
    Ok(Involution::from_vec_unchecked(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AbLetter {
    A,
    BB,
}

impl AbLetter {
    fn weight(self) -> usize {
        match self {
            AbLetter::A => 1,
            AbLetter::BB => 2,
        }
    }
}

/// A word over the letters `a` and `bb`, written as a string over `{a, b}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct AbWord {
    letters: Vec<AbLetter>,
}

impl AbWord {
    pub fn new(letters: Vec<AbLetter>) -> Self {
        AbWord { letters }
    }

    pub fn letters(&self) -> &[AbLetter] {
        &self.letters
    }

    /// Length as a string over `{a, b}`.
    pub fn weight(&self) -> usize {
        self.letters.iter().map(|l| l.weight()).sum()
    }

    /// All words of the given weight, in lexicographic order.
    pub fn all_with_weight(weight: usize) -> Vec<AbWord> {
        fn rec(left: usize, prefix: &mut Vec<AbLetter>, out: &mut Vec<AbWord>) {
            if left == 0 {
                out.push(AbWord::new(prefix.clone()));
                return;
            }
            for l in [AbLetter::A, AbLetter::BB] {
                if l.weight() <= left {
                    prefix.push(l);
                    rec(left - l.weight(), prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(weight, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for AbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(if *l == AbLetter::A { "a" } else { "bb" })?;
        }
        Ok(())
    }
}

impl FromStr for AbWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = s.trim().chars();
        while let Some(c) = chars.next() {
            match c {
                'a' => letters.push(AbLetter::A),
                'b' if chars.next() == Some('b') => letters.push(AbLetter::BB),
                'b' => return Err(Error::Malformed("letter b must come in pairs".into())),
                other => return Err(Error::Malformed(format!("unexpected letter {other:?}"))),
            }
        }
        Ok(AbWord::new(letters))
    }
}

pub fn code_3412(inv: &Involution) -> Result<AbWord> {
    check_avoids(inv.values(), &[&[1, 3, 2], &[3, 4, 1, 2]], "132 and 3412")?;
    let letters = inv
        .values()
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| match v.cmp(&(i + 1)) {
            std::cmp::Ordering::Equal => Some(AbLetter::A),
            std::cmp::Ordering::Less => Some(AbLetter::BB),
            std::cmp::Ordering::Greater => None,
        })
        .collect();
    Ok(AbWord::new(letters))
}

/// Inverse of [`code_3412`]; the length of the involution is the weight of
/// the word.
pub fn decode_3412(word: &AbWord) -> Result<Involution> {
    fn rec(letters: &[AbLetter]) -> Vec<usize> {
        let tail = letters.iter().rev().take_while(|&&l| l == AbLetter::A).count();
        let body = &letters[..letters.len() - tail];
        let Some((_, inner)) = body.split_last() else {
            return (1..=tail).collect();
        };
        let inner = rec(inner);
        let i = inner.len() + 2;
        let mut out = vec![i];
        out.extend(shifted(&inner, 1));
        out.push(1);
        out.extend(i + 1..=i + tail);
        out
    }
    Ok(Involution::from_vec_unchecked(rec(&word.letters)))
}

/// Each position contributes letters by the first matching clause; the
/// clauses overlap for even `n`, so their order matters.
#[allow(clippy::if_same_then_else)]
pub fn code_123_213(inv: &Involution) -> Result<AbWord> {
    let v = inv.values();
    check_avoids(v, &[&[1, 3, 2], &[1, 2, 3], &[2, 1, 3]], "132, 123 and 213")?;
    let n = v.len();
    let m = n / 2;
    let mut letters = Vec::new();
    if n % 2 == 1 {
        for i in 1..=m {
            let pi = v[i - 1];
            if pi == 2 * m + 2 - i {
                letters.push(AbLetter::A);
            } else if pi == 2 * m + 1 - i {
                letters.push(AbLetter::BB);
            }
        }
    } else if m == 0 {
        letters.push(AbLetter::A);
    } else {
        for i in 1..=m {
            let pi = v[i - 1];
            if i < m && pi == 2 * m + 1 - i {
                letters.push(AbLetter::A);
            } else if i == m && pi == m + 1 {
                letters.push(AbLetter::BB);
            } else if i + 2 <= m && pi == 2 * m - i {
                letters.push(AbLetter::BB);
            } else if i + 1 == m && pi == m + 1 {
                letters.extend([AbLetter::BB, AbLetter::A]);
            } else if i == m && pi == m {
                letters.extend([AbLetter::A, AbLetter::A]);
            }
        }
    }
    Ok(AbWord::new(letters))
}

/// Inverse of [`code_123_213`] for involutions of length `n`.
pub fn decode_123_213(word: &AbWord, n: usize) -> Result<Involution> {
    let expected = if n % 2 == 1 { n / 2 } else { n / 2 + 1 };
    if word.weight() != expected {
        return Err(Error::InvalidParams(format!("word {word} has weight {}, expected {expected}", word.weight())));
    }
    let odd = n % 2 == 1;
    let decoded = decode_rec(&word.letters, n, odd)
        .ok_or_else(|| Error::InvalidParams(format!("word {word} is not a code of length {n}")))?;
    Ok(Involution::from_vec_unchecked(decoded))
}

fn decode_rec(letters: &[AbLetter], n: usize, odd: bool) -> Option<Vec<usize>> {
    use AbLetter::{A, BB};
    match (letters, n) {
        ([], 1) if odd => Some(vec![1]),
        ([A], 0) if !odd => Some(Vec::new()),
        ([BB], 2) if !odd => Some(vec![2, 1]),
        ([A, A], 2) if !odd => Some(vec![1, 2]),
        ([A, rest @ ..], _) if n >= 3 => {
            let inner = decode_rec(rest, n - 2, odd)?;
            let mut out = vec![n];
            out.extend(shifted(&inner, 1));
            out.push(1);
            Some(out)
        }
        ([BB, rest @ ..], _) if n >= 4 => {
            let inner = decode_rec(rest, n - 4, odd)?;
            let mut out = vec![n - 1, n];
            out.extend(shifted(&inner, 2));
            out.extend([1, 2]);
            Some(out)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn inv(s: &str) -> Involution {
        Involution::new(parse_permutation(s).unwrap()).unwrap()
    }

    fn word(s: &str) -> AbWord {
        s.parse().unwrap()
    }

    #[test]
    fn known_213_codes() {
        let cases = [
            ("", "0"),
            ("1", "0"),
            ("12", "1"),
            ("21", "1,0"),
            ("123", "1"),
            ("321", "1,0"),
            ("1234", "2"),
            ("4231", "1,1"),
            ("3412", "2,0"),
            ("4321", "1,1,0"),
        ];
        for (p, c) in cases {
            let pi = if p.is_empty() { Involution::empty() } else { inv(p) };
            let code: CompositionCode = c.parse().unwrap();
            assert_eq!(code_213(&pi).unwrap(), code, "{p}");
            assert_eq!(decode_213(&code, pi.len()).unwrap(), pi);
        }
        let long = inv("21 19 20 16 17 18 15 14 9 10 11 12 13 8 7 4 5 6 2 3 1");
        assert_eq!(code_213(&long).unwrap().parts(), &[1, 2, 3, 1, 1, 2]);
    }

    #[test]
    fn composition_codes_count_powers_of_two() {
        for t in 0..8 {
            assert_eq!(CompositionCode::all_with_total(t).len(), 1 << t);
        }
        assert!("0,1".parse::<CompositionCode>().is_err());
    }

    #[test]
    fn ab_codes() {
        assert_eq!(code_3412(&inv("1")).unwrap(), word("a"));
        assert_eq!(code_3412(&inv("21")).unwrap(), word("bb"));
        assert_eq!(code_3412(&inv("123")).unwrap(), word("aaa"));
        assert_eq!(decode_3412(&word("bbaa")).unwrap(), inv("2134"));
        assert_eq!(decode_3412(&word("aabb")).unwrap(), inv("4231"));
        assert_eq!(code_123_213(&inv("1")).unwrap(), word(""));
        assert_eq!(code_123_213(&inv("321")).unwrap(), word("a"));
        assert_eq!(code_123_213(&Involution::empty()).unwrap(), word("a"));
        assert_eq!(code_123_213(&inv("4321")).unwrap(), word("abb"));
        assert_eq!(code_123_213(&inv("4231")).unwrap(), word("aaa"));
        assert_eq!(code_123_213(&inv("3412")).unwrap(), word("bba"));
        assert_eq!(decode_123_213(&word("bb"), 5).unwrap(), inv("45312"));
        assert!("ab".parse::<AbWord>().is_err());
    }
}
