//! Generating trees given by succession rules, and the transfer matrix that
//! counts their levels.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// A generating tree on the labels `0..labels`: the root carries `axiom` and
/// a node labelled `p` has one child for each entry of `rules[p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessionSystem {
    labels: usize,
    axiom: usize,
    rules: Vec<Vec<usize>>,
}

impl SuccessionSystem {
    pub fn new(axiom: usize, rules: Vec<Vec<usize>>) -> Result<Self> {
        let labels = rules.len();
        if axiom >= labels {
            return Err(Error::InvalidParams(format!("axiom {axiom} is not one of the {labels} labels")));
        }
        if let Some(bad) = rules.iter().flatten().find(|&&c| c >= labels) {
            return Err(Error::InvalidParams(format!("rule produces unknown label {bad}")));
        }
        Ok(SuccessionSystem { labels, axiom, rules })
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn axiom(&self) -> usize {
        self.axiom
    }

    pub fn children(&self, label: usize) -> &[usize] {
        &self.rules[label]
    }

    /// `{"axiom": 0, "rules": {"0": [1], "1": [2, 0], ...}}`
    pub fn to_json(&self) -> Value {
        let rules: Map<String, Value> = self.rules.iter().enumerate().map(|(p, c)| (p.to_string(), json!(c))).collect();
        json!({ "axiom": self.axiom, "rules": rules })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Malformed("succession JSON must be {\"axiom\": p, \"rules\": {\"p\": [labels]}}".into());
        let axiom = v.get("axiom").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let map = v.get("rules").and_then(Value::as_object).ok_or_else(bad)?;
        let mut rules = vec![None; map.len()];
        for (key, children) in map {
            let p: usize = key.parse().map_err(|_| bad())?;
            let slot = rules.get_mut(p).ok_or_else(bad)?;
            let list = children.as_array().ok_or_else(bad)?;
            *slot = Some(list.iter().map(|c| c.as_u64().map(|c| c as usize).ok_or_else(bad)).collect::<Result<Vec<_>>>()?);
        }
        let rules = rules.into_iter().map(|r| r.ok_or_else(bad)).collect::<Result<Vec<_>>>()?;
        Self::new(axiom, rules)
    }
}

/// The system on labels `0..k` with `0 -> 1`, `p -> (p+1)(p-1)` and
/// `k-1 -> k-2`; label `p` is the number of fixed points.
pub fn system_star(k: usize) -> Result<SuccessionSystem> {
    if k < 2 {
        return Err(Error::InvalidParams(format!("the system needs k >= 2, got {k}")));
    }
    let rules = (0..k)
        .map(|p| match p {
            0 => vec![1],
            p if p == k - 1 => vec![k - 2],
            p => vec![p + 1, p - 1],
        })
        .collect();
    SuccessionSystem::new(0, rules)
}

/// Number of nodes with each label at depth `n` (the root is at depth 0).
pub fn level_counts(sys: &SuccessionSystem, n: usize) -> BTreeMap<usize, BigUint> {
    let mut freq = vec![BigUint::zero(); sys.labels];
    freq[sys.axiom] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); sys.labels];
        for (p, count) in freq.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &child in &sys.rules[p] {
                next[child] += count;
            }
        }
        freq = next;
    }
    freq.into_iter().enumerate().collect()
}

/// The `k x k` tridiagonal matrix with ones next to the diagonal, and the
/// start vector `(1, 0, ..., 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    pub k: usize,
    pub m: Vec<Vec<BigUint>>,
    pub v: Vec<BigUint>,
}

impl TransferMatrix {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("the transfer matrix needs k >= 2, got {k}")));
        }
        let m = (0..k)
            .map(|i| (0..k).map(|j| if i.abs_diff(j) == 1 { BigUint::one() } else { BigUint::zero() }).collect())
            .collect();
        let mut v = vec![BigUint::zero(); k];
        v[0] = BigUint::one();
        Ok(TransferMatrix { k, m, v })
    }

    /// `V M^n`.
    pub fn power_row(&self, n: usize) -> Vec<BigUint> {
        let mut row = self.v.clone();
        for _ in 0..n {
            row = (0..self.k).map(|j| (0..self.k).map(|i| &row[i] * &self.m[i][j]).sum()).collect();
        }
        row
    }
}

/// `V_k M_k^n`; component `p` counts involutions of length `n` avoiding 132
/// and `12...k` with `p` fixed points.
pub fn transfer_counts(k: usize, n: usize) -> Result<Vec<BigUint>> {
    Ok(TransferMatrix::new(k)?.power_row(n))
}

/// Dyck words of semilength `n` whose height stays strictly below `h`.
pub fn dyck_bounded_height_count(n: usize, h: usize) -> BigUint {
    if h == 0 {
        return BigUint::zero();
    }
    let mut heights = vec![BigUint::zero(); h];
    heights[0] = BigUint::one();
    for _ in 0..2 * n {
        let mut next = vec![BigUint::zero(); h];
        for (y, c) in heights.iter().enumerate() {
            if y + 1 < h {
                next[y + 1] += c;
            }
            if y > 0 {
                next[y - 1] += c;
            }
        }
        heights = next;
    }
    heights.swap_remove(0)
}
