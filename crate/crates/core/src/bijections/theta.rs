//! A length-preserving bijection between involutions avoiding `{132, 12...k}`
//! and involutions avoiding `{132, 2134...k}`.
//!
//! Both classes carry the succession system with labels `0..k` where label
//! `p` has children `p+1` (when `p < k-1`) and `p-1` (when `p > 0`). On the
//! first side the label is the number of fixed points and the tree is the one
//! used by [`super::phi`]. On the second side the label is the fixed-point
//! count `q` when `q <= k-3`, and otherwise `k-2` or `k-1` according to the
//! parity of `n + k`. The map reads the label path of its input and replays
//! it in the other tree.

use super::ops::{close_cycle, first_fixed_point, insert_fixed_point, open_cycle, remove_fixed_point};
use super::phi::{involution_child, involution_path, Move};
use crate::error::{Error, Result};
use crate::perm::{fixed_points, Involution, PatternMatcher};

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParams(format!("k must be at least 3, got {k}")));
    }
    Ok(())
}

fn incr_pattern(k: usize) -> Vec<usize> {
    (1..=k).collect()
}

fn m213_pattern(k: usize) -> Vec<usize> {
    let mut tau = vec![2, 1];
    tau.extend(3..=k);
    tau
}

fn check_class(values: &[usize], forbidden: &[usize], name: &str) -> Result<()> {
    if PatternMatcher::new(&[1, 3, 2]).occurs_in(values) || PatternMatcher::new(forbidden).occurs_in(values) {
        return Err(Error::NotInClass(format!("input does not avoid 132 and {name}")));
    }
    Ok(())
}

fn label(values: &[usize], k: usize) -> usize {
    let q = fixed_points(values);
    if q + 3 <= k {
        q
    } else if (values.len() + k).is_multiple_of(2) {
        k - 2
    } else {
        k - 1
    }
}

/// Replaces the `2j+1` fixed points centred at `x` by `j+1` interleaved
/// 2-cycles on one more position.
fn split_fixed_block(pi: &[usize], x: usize, j: usize) -> Vec<usize> {
    let (lo, hi) = (x - j, x + j);
    debug_assert!((lo..=hi).all(|i| pi[i - 1] == i));
    let bump = |v: usize| if v > hi { v + 1 } else { v };
    let mut out = vec![0; pi.len() + 1];
    for (i, &v) in pi.iter().enumerate() {
        let pos = i + 1;
        if pos < lo {
            out[i] = bump(v);
        } else if pos > hi {
            out[i + 1] = bump(v);
        }
    }
    for i in 0..=j {
        out[lo + i - 1] = x + 1 + i;
        out[x + i] = lo + i;
    }
    out
}

fn merge_cycle_block(sigma: &[usize], x: usize, j: usize) -> Vec<usize> {
    let (lo, hi) = (x - j, x + j + 1);
    let drop = |v: usize| if v > hi { v - 1 } else { v };
    let mut out = Vec::with_capacity(sigma.len() - 1);
    for (i, &v) in sigma.iter().enumerate() {
        let pos = i + 1;
        if pos < lo || pos > hi {
            out.push(drop(v));
        } else if pos < hi {
            out.push(pos);
        }
    }
    out
}

fn second_child(pi: &[usize], k: usize, mv: Move) -> Option<Vec<usize>> {
    let n = pi.len();
    let q = fixed_points(pi);
    let p = label(pi, k);
    match mv {
        Move::Insert if p + 3 <= k => Some(insert_fixed_point(pi, (n - q) / 2 + 1)),
        Move::Insert if p + 2 == k => Some(insert_fixed_point(pi, (n + 4 - k) / 2)),
        Move::Insert => None,
        Move::Cycle if p == 0 => None,
        Move::Cycle if p + 3 <= k => first_fixed_point(pi).map(|f| open_cycle(pi, (n - q) / 2 + 1, f)),
        Move::Cycle if p + 2 == k => Some(split_fixed_block(pi, (n + 4 - k) / 2, (q + 2 - k) / 2)),
        Move::Cycle => Some(insert_fixed_point(pi, (n + 3 - k) / 2)),
    }
}

fn second_parent(sigma: &[usize], k: usize) -> Option<(Vec<usize>, Move)> {
    let n = sigma.len();
    if n == 0 {
        return None;
    }
    let q = fixed_points(sigma);
    let p = label(sigma, k);
    let parent = if p + 1 == k {
        (remove_fixed_point(sigma, (n + 3 - k) / 2), Move::Insert)
    } else if p + 2 == k {
        if q + 2 == k {
            (remove_fixed_point(sigma, (n + 4 - k) / 2), Move::Insert)
        } else {
            (remove_fixed_point(sigma, (n + 2 - k) / 2), Move::Cycle)
        }
    } else {
        let m = (n - q) / 2;
        if m < n && sigma[m] == m + 1 {
            (remove_fixed_point(sigma, m + 1), Move::Insert)
        } else if p + 3 == k {
            let x = (n + 3 - k) / 2;
            (merge_cycle_block(sigma, x, sigma[x - 1] - x - 1), Move::Cycle)
        } else {
            (close_cycle(sigma, m), Move::Cycle)
        }
    };
    Some(parent)
}

/// Maps an involution avoiding `{132, 12...k}` to one avoiding
/// `{132, 2134...k}` of the same length.
pub fn theta_2134(inv: &Involution, k: usize) -> Result<Involution> {
    check_k(k)?;
    check_class(inv.values(), &incr_pattern(k), "12...k")?;
    let out = involution_path(inv.values()).into_iter().fold(Vec::new(), |cur, mv| {
        second_child(&cur, k, mv).expect("label paths agree on both trees")
    });
    Ok(Involution::from_vec_unchecked(out))
}

pub fn theta_2134_inv(inv: &Involution, k: usize) -> Result<Involution> {
    check_k(k)?;
    check_class(inv.values(), &m213_pattern(k), "2134...k")?;
    let mut path = Vec::with_capacity(inv.len());
    let mut cur = inv.values().to_vec();
    while let Some((parent, mv)) = second_parent(&cur, k) {
        path.push(mv);
        cur = parent;
    }
    let out = path.into_iter().rev().fold(Vec::new(), |cur, mv| {
        involution_child(&cur, mv).expect("label paths agree on both trees")
    });
    Ok(Involution::from_vec_unchecked(out))
}
