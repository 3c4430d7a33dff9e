//! The bijection between involutions containing 132 exactly once and
//! 132-avoiding involutions two shorter with at least one fixed point.
//!
//! The single occurrence always sits at positions `x, x+1, z` with `x` a fixed
//! point and `(x+1 z)` a 2-cycle. Collapsing those three entries into one fixed
//! point at position `z` gives the image.

use crate::error::{Error, Result};
use crate::perm::{Involution, PatternMatcher};

use super::ops::first_fixed_point;

const PATTERN_132: [usize; 3] = [1, 3, 2];

/// Positions (1-based) of the unique 132 occurrence.
fn unique_occurrence(values: &[usize]) -> Result<(usize, usize, usize)> {
    let matcher = PatternMatcher::new(&PATTERN_132);
    if matcher.count_capped(values, 1) != 1 {
        return Err(Error::WrongOccurrenceCount { found: matcher.count(values) });
    }
    let n = values.len();
    for a in 0..n {
        for b in a + 1..n {
            if values[b] < values[a] {
                continue;
            }
            for c in b + 1..n {
                if values[a] < values[c] && values[c] < values[b] {
                    return Ok((a + 1, b + 1, c + 1));
                }
            }
        }
    }
    unreachable!("matcher reported an occurrence")
}

pub fn psi(pi: &Involution) -> Result<Involution> {
    let v = pi.values();
    let (x, y, z) = unique_occurrence(v)?;
    debug_assert!(v[x - 1] == x && y == x + 1 && v[y - 1] == z && v[z - 1] == y);
    let shrink = |u: usize| if u > y { u - 2 } else { u };
    let out = v
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != x && i + 1 != y)
        .map(|(i, &u)| if i + 1 == z { z - 2 } else { shrink(u) })
        .collect();
    Ok(Involution::from_vec_unchecked(out))
}

/// Inverse of [`psi`]. The block `x, x+1` is reinserted in the middle of the
/// stretch between the leading run above `t` and `t`, the first fixed point.
pub fn psi_inv(sigma: &Involution) -> Result<Involution> {
    let v = sigma.values();
    if PatternMatcher::new(&PATTERN_132).occurs_in(v) {
        return Err(Error::NotAvoiding);
    }
    let t = first_fixed_point(v).ok_or(Error::NoFixedPoint)?;
    let lead = v.iter().take_while(|&&u| u > t).count();
    let x = lead + (t - 1 - lead) / 2 + 1;
    let grow = |u: usize| if u < x { u } else { u + 2 };
    let mut out = vec![0; v.len() + 2];
    for (i, &u) in v.iter().enumerate() {
        out[grow(i + 1) - 1] = grow(u);
    }
    out[x - 1] = x;
    out[x] = t + 2;
    out[t + 1] = x + 1;
    Ok(Involution::from_vec_unchecked(out))
}
