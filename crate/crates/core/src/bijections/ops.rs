//! Local edits on involutions stored as 1-based value slices.
//!
//! Each edit keeps the result an involution: positions and values are shifted
//! together.

/// Inserts a new fixed point so that it lands at position `pos` (1-based,
/// `1..=n+1`).
pub(crate) fn insert_fixed_point(pi: &[usize], pos: usize) -> Vec<usize> {
    let bump = |v: usize| if v >= pos { v + 1 } else { v };
    let mut out = Vec::with_capacity(pi.len() + 1);
    out.extend(pi[..pos - 1].iter().map(|&v| bump(v)));
    out.push(pos);
    out.extend(pi[pos - 1..].iter().map(|&v| bump(v)));
    out
}

/// Removes the fixed point at position `pos`.
pub(crate) fn remove_fixed_point(sigma: &[usize], pos: usize) -> Vec<usize> {
    debug_assert_eq!(sigma[pos - 1], pos);
    sigma
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != pos)
        .map(|(_, &v)| if v > pos { v - 1 } else { v })
        .collect()
}

/// Inserts a new position `open` and pairs it with the fixed point currently
/// at `fixed` (requires `fixed >= open`).
pub(crate) fn open_cycle(pi: &[usize], open: usize, fixed: usize) -> Vec<usize> {
    debug_assert!(fixed >= open && pi[fixed - 1] == fixed);
    let mut out = insert_fixed_point(pi, open);
    let moved = fixed + 1;
    out[open - 1] = moved;
    out[moved - 1] = open;
    out
}

/// Removes the position `open` and turns its partner into a fixed point.
pub(crate) fn close_cycle(sigma: &[usize], open: usize) -> Vec<usize> {
    let partner = sigma[open - 1];
    debug_assert!(partner != open);
    let drop = |v: usize| if v > open { v - 1 } else { v };
    sigma
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != open)
        .map(|(i, &v)| if i + 1 == partner { drop(partner) } else { drop(v) })
        .collect()
}

pub(crate) fn first_fixed_point(values: &[usize]) -> Option<usize> {
    values.iter().enumerate().find(|&(i, &v)| v == i + 1).map(|(i, _)| i + 1)
}
