//! The bijection between 132-avoiding involutions and primitive Dyck words.
//!
//! Both families grow by the same two moves. An involution of length `n` with
//! `p` fixed points splits as `pi' pi'' x pi'''` where `|pi'| = (n-p)/2` and
//! `x` is its first fixed point; a word with balance `p` splits as
//! `w_0 x w_1 x ... x w_p` with every `w_i` a Dyck word.
//!
//! | move     | involution                              | word               |
//! |----------|-----------------------------------------|--------------------|
//! | `Insert` | new fixed point between `pi'` and `pi''` | `x w`              |
//! | `Cycle`  | first fixed point closes a new cycle opened between `pi'` and `pi''` | `x w_0 X w_1 x ... x w_p` |
//!
//! `Insert` raises the label (fixed points, balance) by one and `Cycle` lowers
//! it by one. The map is computed by reading off the move sequence of one
//! object through its parent function and replaying it on the other family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ops::{close_cycle, first_fixed_point, insert_fixed_point, open_cycle, remove_fixed_point};
use crate::error::{Error, Result};
use crate::perm::{fixed_points, Involution, PatternMatcher};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Insert,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
}

/// A word over `{x, X}` (`x` = up, `X` = down).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DyckWord {
    steps: Vec<Step>,
}

impl PartialOrd for Step {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Step {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self == Step::Down).cmp(&(*other == Step::Down))
    }
}

impl DyckWord {
    pub fn new(steps: Vec<Step>) -> Self {
        DyckWord { steps }
    }

    pub fn empty() -> Self {
        DyckWord::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `#up - #down`, negative for non-primitive words.
    pub fn balance(&self) -> i64 {
        self.steps.iter().map(|s| if *s == Step::Up { 1 } else { -1 }).sum()
    }

    pub fn is_primitive(&self) -> bool {
        first_negative_prefix(&self.steps).is_none()
    }

    /// Maximum prefix balance.
    pub fn height(&self) -> i64 {
        let mut h = 0i64;
        let mut max = 0;
        for s in &self.steps {
            h += if *s == Step::Up { 1 } else { -1 };
            max = max.max(h);
        }
        max
    }

    /// All primitive words of the given length, in lexicographic order
    /// (`x` before `X`).
    pub fn all_primitive(len: usize) -> Vec<DyckWord> {
        fn rec(prefix: &mut Vec<Step>, height: usize, left: usize, out: &mut Vec<DyckWord>) {
            if left == 0 {
                out.push(DyckWord::new(prefix.clone()));
                return;
            }
            prefix.push(Step::Up);
            rec(prefix, height + 1, left - 1, out);
            prefix.pop();
            if height > 0 {
                prefix.push(Step::Down);
                rec(prefix, height - 1, left - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(len), 0, len, &mut out);
        out
    }
}

/// Index of the first step at which the prefix balance becomes negative.
fn first_negative_prefix(steps: &[Step]) -> Option<usize> {
    let mut h = 0i64;
    for (i, s) in steps.iter().enumerate() {
        h += if *s == Step::Up { 1 } else { -1 };
        if h < 0 {
            return Some(i);
        }
    }
    None
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::Up { "x" } else { "X" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'x' => Ok(Step::Up),
                'X' => Ok(Step::Down),
                other => Err(Error::Malformed(format!("unexpected letter {other:?} in Dyck word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(DyckWord::new)
    }
}

pub(crate) fn involution_child(pi: &[usize], mv: Move) -> Option<Vec<usize>> {
    let n = pi.len();
    let p = fixed_points(pi);
    let m = (n - p) / 2;
    match mv {
        Move::Insert => Some(insert_fixed_point(pi, m + 1)),
        Move::Cycle => first_fixed_point(pi).map(|x| open_cycle(pi, m + 1, x)),
    }
}

pub(crate) fn involution_parent(sigma: &[usize]) -> Option<(Vec<usize>, Move)> {
    let n = sigma.len();
    if n == 0 {
        return None;
    }
    let p = fixed_points(sigma);
    let m = (n - p) / 2;
    if m < n && sigma[m] == m + 1 {
        Some((remove_fixed_point(sigma, m + 1), Move::Insert))
    } else {
        Some((close_cycle(sigma, m), Move::Cycle))
    }
}

pub(crate) fn dyck_child(w: &[Step], mv: Move) -> Option<Vec<Step>> {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(Step::Up);
    out.extend_from_slice(w);
    if mv == Move::Cycle {
        // The first unmatched up-step starts right after the last return to height 0.
        let mut h = 0i64;
        let mut last_zero = None;
        for (i, s) in w.iter().enumerate() {
            if h == 0 {
                last_zero = Some(i);
            }
            h += if *s == Step::Up { 1 } else { -1 };
        }
        if h == 0 {
            return None;
        }
        let i = last_zero?;
        debug_assert_eq!(w[i], Step::Up);
        out[i + 1] = Step::Down;
    }
    Some(out)
}

pub(crate) fn dyck_parent(w: &[Step]) -> Option<(Vec<Step>, Move)> {
    let (first, rest) = w.split_first()?;
    debug_assert_eq!(*first, Step::Up);
    match first_negative_prefix(rest) {
        None => Some((rest.to_vec(), Move::Insert)),
        Some(i) => {
            let mut parent = rest.to_vec();
            parent[i] = Step::Up;
            Some((parent, Move::Cycle))
        }
    }
}

fn check_avoids_132(inv: &Involution) -> Result<()> {
    if PatternMatcher::new(&[1, 3, 2]).occurs_in(inv.values()) {
        Err(Error::NotAvoiding)
    } else {
        Ok(())
    }
}

fn check_primitive(w: &DyckWord) -> Result<()> {
    if w.is_primitive() {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

pub fn parent_involution(inv: &Involution) -> Result<Involution> {
    check_avoids_132(inv)?;
    let (parent, _) = involution_parent(inv.values()).ok_or(Error::EmptyInput)?;
    Ok(Involution::from_vec_unchecked(parent))
}

pub fn parent_dyck(w: &DyckWord) -> Result<DyckWord> {
    check_primitive(w)?;
    let (parent, _) = dyck_parent(w.steps()).ok_or(Error::EmptyInput)?;
    Ok(DyckWord::new(parent))
}

/// Moves leading from the root to `inv`, in application order.
pub(crate) fn involution_path(values: &[usize]) -> Vec<Move> {
    let mut path = Vec::with_capacity(values.len());
    let mut cur = values.to_vec();
    while let Some((parent, mv)) = involution_parent(&cur) {
        path.push(mv);
        cur = parent;
    }
    path.reverse();
    path
}

pub(crate) fn dyck_path(steps: &[Step]) -> Vec<Move> {
    let mut path = Vec::with_capacity(steps.len());
    let mut cur = steps.to_vec();
    while let Some((parent, mv)) = dyck_parent(&cur) {
        path.push(mv);
        cur = parent;
    }
    path.reverse();
    path
}

pub(crate) fn replay_involution(path: &[Move]) -> Vec<usize> {
    path.iter().fold(Vec::new(), |cur, &mv| {
        involution_child(&cur, mv).expect("move sequence read from a valid tree node")
    })
}

pub fn phi(inv: &Involution) -> Result<DyckWord> {
    check_avoids_132(inv)?;
    let word = involution_path(inv.values()).into_iter().fold(Vec::new(), |cur, mv| {
        dyck_child(&cur, mv).expect("labels agree on both trees")
    });
    Ok(DyckWord::new(word))
}

pub fn phi_inv(w: &DyckWord) -> Result<Involution> {
    check_primitive(w)?;
    Ok(Involution::from_vec_unchecked(replay_involution(&dyck_path(w.steps()))))
}
