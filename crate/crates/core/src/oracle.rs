//! Ground-truth counting by explicit generation.
//!
//! Two independent involution generators are provided: an exhaustive one over
//! all of `S_n` and a structured one that walks the generating tree of
//! 132-avoiding involutions and never builds anything else. Class queries are
//! routed to the cheapest generator that is still exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bijections::phi::{involution_child, Move};
use crate::bijections::psi_inv;
use crate::error::{Error, Result};
use crate::perm::{fixed_points, Involution, PatternMatcher, PatternSpec, Permutation};
use crate::series::TruncatedSeries;

/// Largest lengths each generator will accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub exhaustive_involutions: usize,
    pub structured_involutions: usize,
    pub exhaustive_permutations: usize,
    pub structured_permutations: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exhaustive_involutions: 16,
            structured_involutions: 24,
            exhaustive_permutations: 11,
            structured_permutations: 16,
        }
    }
}

impl Limits {
    /// The same cap for every generator.
    pub fn uniform(n: usize) -> Self {
        Limits {
            exhaustive_involutions: n,
            structured_involutions: n,
            exhaustive_permutations: n,
            structured_permutations: n,
        }
    }

    fn check(what: &'static str, n: usize, cap: usize) -> Result<()> {
        if n > cap {
            return Err(Error::ResourceLimit { what, n, cap });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Avoid,
    Eq(u64),
    Ge(u64),
}

impl Relation {
    fn holds(self, matcher: &PatternMatcher, values: &[usize]) -> bool {
        match self {
            Relation::Avoid => !matcher.occurs_in(values),
            Relation::Eq(0) => !matcher.occurs_in(values),
            Relation::Eq(r) => matcher.count_capped(values, r) == r,
            Relation::Ge(0) => true,
            Relation::Ge(r) => matcher.count_capped(values, r - 1) >= r,
        }
    }

    fn is_avoid(self) -> bool {
        matches!(self, Relation::Avoid | Relation::Eq(0))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Avoid => f.write_str("avoid"),
            Relation::Eq(r) => write!(f, "eq:{r}"),
            Relation::Ge(r) => write!(f, "ge:{r}"),
        }
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("relation must be avoid, eq:r or ge:r, got {s:?}"));
        if s == "avoid" {
            return Ok(Relation::Avoid);
        }
        let (kind, r) = s.split_once(':').ok_or_else(bad)?;
        let r: u64 = r.parse().map_err(|_| bad())?;
        match kind {
            "eq" => Ok(Relation::Eq(r)),
            "ge" => Ok(Relation::Ge(r)),
            _ => Err(bad()),
        }
    }
}

/// "Contains `pattern` a number of times described by `relation`."
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OccurrenceConstraint {
    pub pattern: PatternSpec,
    pub relation: Relation,
}

impl OccurrenceConstraint {
    pub fn avoid(pattern: PatternSpec) -> Self {
        OccurrenceConstraint { pattern, relation: Relation::Avoid }
    }

    pub fn exactly(pattern: PatternSpec, r: u64) -> Self {
        OccurrenceConstraint { pattern, relation: Relation::Eq(r) }
    }

    pub fn at_least(pattern: PatternSpec, r: u64) -> Self {
        OccurrenceConstraint { pattern, relation: Relation::Ge(r) }
    }
}

impl fmt::Display for OccurrenceConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.pattern, self.relation)
    }
}

impl FromStr for OccurrenceConstraint {
    type Err = Error;
    /// Parses `<pattern>:<avoid|eq:r|ge:r>`, e.g. `incr:4:avoid`.
    fn from_str(s: &str) -> Result<Self> {
        let (pattern, relation) = if let Some(p) = s.strip_suffix(":avoid") {
            (p, "avoid".to_string())
        } else {
            let (head, r) = s
                .rsplit_once(':')
                .ok_or_else(|| Error::Malformed(format!("constraint {s:?} has no relation")))?;
            let (p, kind) = head
                .rsplit_once(':')
                .ok_or_else(|| Error::Malformed(format!("constraint {s:?} has no relation")))?;
            (p, format!("{kind}:{r}"))
        };
        Ok(OccurrenceConstraint { pattern: pattern.parse()?, relation: relation.parse()? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Involution,
    Permutation,
}

/// A class of objects of every length: the kind, the number of 132
/// occurrences and further occurrence constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub kind: ObjectKind,
    pub c132: Relation,
    pub extra: Vec<OccurrenceConstraint>,
}

impl ClassSpec {
    pub fn involutions(c132: Relation, extra: Vec<OccurrenceConstraint>) -> Self {
        ClassSpec { kind: ObjectKind::Involution, c132, extra }
    }

    pub fn permutations(c132: Relation, extra: Vec<OccurrenceConstraint>) -> Self {
        ClassSpec { kind: ObjectKind::Permutation, c132, extra }
    }

    /// The objects in this class that avoid `pattern`.
    pub fn avoiding(mut self, pattern: PatternSpec) -> Self {
        self.extra.push(OccurrenceConstraint::avoid(pattern));
        self
    }

    pub fn at(&self, n: usize) -> ClassQuery {
        ClassQuery { n, class: self.clone() }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ObjectKind::Involution => "involutions",
            ObjectKind::Permutation => "permutations",
        };
        write!(f, "{kind} with 132 {}", self.c132)?;
        for c in &self.extra {
            write!(f, ", {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassQuery {
    pub n: usize,
    pub class: ClassSpec,
}

/// Constraint checks sorted so that the cheapest ones run first.
struct Filter {
    checks: Vec<(PatternMatcher, Relation)>,
}

impl Filter {
    fn new(class: &ClassSpec, with_132: bool) -> Result<Self> {
        let mut checks = Vec::new();
        if with_132 {
            checks.push((PatternMatcher::new(&[1, 3, 2]), class.c132));
        }
        for c in &class.extra {
            let tau = c.pattern.materialize()?;
            checks.push((PatternMatcher::new(tau.values()), c.relation));
        }
        checks.sort_by_key(|(m, rel)| (m.len(), !rel.is_avoid()));
        Ok(Filter { checks })
    }

    fn accepts(&self, values: &[usize]) -> bool {
        self.checks.iter().all(|(m, rel)| rel.holds(m, values))
    }
}

/// Every involution of length `n`, in a fixed order: `n` is fixed first, then
/// paired with `1, 2, ...`, recursively on the largest unplaced element.
pub fn all_involutions(n: usize, limits: &Limits) -> Result<impl Iterator<Item = Involution>> {
    Limits::check("exhaustive involutions", n, limits.exhaustive_involutions)?;
    Ok(InvolutionIter { stack: vec![vec![0; n]] })
}

struct InvolutionIter {
    stack: Vec<Vec<usize>>,
}

impl Iterator for InvolutionIter {
    type Item = Involution;
    fn next(&mut self) -> Option<Involution> {
        while let Some(state) = self.stack.pop() {
            let Some(e) = state.iter().rposition(|&v| v == 0).map(|i| i + 1) else {
                return Some(Involution::from_vec_unchecked(state));
            };
            for j in (1..e).rev().filter(|&j| state[j - 1] == 0) {
                let mut s = state.clone();
                s[e - 1] = j;
                s[j - 1] = e;
                self.stack.push(s);
            }
            let mut s = state;
            s[e - 1] = e;
            self.stack.push(s);
        }
        None
    }
}

/// Every 132-avoiding involution of length `n`, grown from the empty one by
/// inserting a fixed point or turning the first fixed point into a 2-cycle.
pub fn structured_avoiders(n: usize, limits: &Limits) -> Result<impl Iterator<Item = Involution>> {
    Limits::check("structured involutions", n, limits.structured_involutions)?;
    let it = TreeIter { n, stack: vec![Vec::new()], children: involution_children };
    Ok(it.map(Involution::from_vec_unchecked))
}

/// Every 132-avoiding permutation of length `n`, grown by inserting a new
/// maximum wherever it creates no 132.
pub fn structured_permutation_avoiders(n: usize, limits: &Limits) -> Result<impl Iterator<Item = Permutation>> {
    Limits::check("structured permutations", n, limits.structured_permutations)?;
    let it = TreeIter { n, stack: vec![Vec::new()], children: permutation_children };
    Ok(it.map(Permutation::from_vec_unchecked))
}

/// Every permutation of length `n` in lexicographic order.
pub fn all_permutations(n: usize, limits: &Limits) -> Result<impl Iterator<Item = Permutation>> {
    Limits::check("exhaustive permutations", n, limits.exhaustive_permutations)?;
    let mut next: Option<Vec<usize>> = Some((1..=n).collect());
    Ok(std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            next = Some(succ);
        }
        Some(Permutation::from_vec_unchecked(cur))
    }))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn involution_children(node: &[usize]) -> Vec<Vec<usize>> {
    [Move::Insert, Move::Cycle].into_iter().filter_map(|mv| involution_child(node, mv)).collect()
}

fn permutation_children(node: &[usize]) -> Vec<Vec<usize>> {
    let n = node.len();
    let mut suffix_max = vec![0; n + 1];
    for i in (0..n).rev() {
        suffix_max[i] = suffix_max[i + 1].max(node[i]);
    }
    let mut prefix_min = usize::MAX;
    let mut out = Vec::new();
    for i in 0..=n {
        if prefix_min > suffix_max[i] {
            let mut c = Vec::with_capacity(n + 1);
            c.extend_from_slice(&node[..i]);
            c.push(n + 1);
            c.extend_from_slice(&node[i..]);
            out.push(c);
        }
        if i < n {
            prefix_min = prefix_min.min(node[i]);
        }
    }
    out
}

struct TreeIter {
    n: usize,
    stack: Vec<Vec<usize>>,
    children: fn(&[usize]) -> Vec<Vec<usize>>,
}

impl Iterator for TreeIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        while let Some(node) = self.stack.pop() {
            if node.len() == self.n {
                return Some(node);
            }
            self.stack.extend((self.children)(&node).into_iter().rev());
        }
        None
    }
}

fn tree_leaves(node: Vec<usize>, n: usize, children: fn(&[usize]) -> Vec<Vec<usize>>, visit: &mut dyn FnMut(&[usize])) {
    if node.len() == n {
        visit(&node);
        return;
    }
    for c in children(&node) {
        tree_leaves(c, n, children, visit);
    }
}

/// Nodes of the tree at depth `min(n, depth)`, used as parallel work units.
fn tree_frontier(n: usize, depth: usize, children: fn(&[usize]) -> Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut level = vec![Vec::new()];
    for _ in 0..n.min(depth) {
        level = level.iter().flat_map(|v| children(v)).collect();
    }
    level
}

fn visit_involutions(values: &mut [usize], mut e: usize, visit: &mut dyn FnMut(&[usize])) {
    while e > 0 && values[e - 1] != 0 {
        e -= 1;
    }
    if e == 0 {
        visit(values);
        return;
    }
    values[e - 1] = e;
    visit_involutions(values, e - 1, visit);
    for j in 1..e {
        if values[j - 1] == 0 {
            values[e - 1] = j;
            values[j - 1] = e;
            visit_involutions(values, e - 1, visit);
            values[j - 1] = 0;
        }
    }
    values[e - 1] = 0;
}

fn visit_permutations(prefix: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize])) {
    if prefix.len() == used.len() {
        visit(prefix);
        return;
    }
    for v in 1..=used.len() {
        if !used[v - 1] {
            used[v - 1] = true;
            prefix.push(v);
            visit_permutations(prefix, used, visit);
            prefix.pop();
            used[v - 1] = false;
        }
    }
}

const FRONTIER_DEPTH: usize = 10;

/// Tallies accepted objects of length `n` by `key`, summed over parallel work
/// units.
fn tally<K>(q: &ClassQuery, limits: &Limits, bins: usize, key: K) -> Result<Vec<u64>>
where
    K: Fn(&[usize]) -> usize + Sync,
{
    let n = q.n;
    let class = &q.class;
    let reduce = |a: Vec<u64>, b: Vec<u64>| a.into_iter().zip(b).map(|(x, y)| x + y).collect::<Vec<u64>>();
    let zero = || vec![0u64; bins];

    match (class.kind, class.c132) {
        (ObjectKind::Involution, Relation::Avoid | Relation::Eq(0)) => {
            Limits::check("structured involutions", n, limits.structured_involutions)?;
            let filter = Filter::new(class, false)?;
            let units = tree_frontier(n, FRONTIER_DEPTH, involution_children);
            Ok(units
                .into_par_iter()
                .map(|root| {
                    let mut counts = zero();
                    tree_leaves(root, n, involution_children, &mut |v| {
                        if filter.accepts(v) {
                            counts[key(v)] += 1;
                        }
                    });
                    counts
                })
                .reduce(zero, reduce))
        }
        (ObjectKind::Involution, Relation::Eq(1)) => {
            Limits::check("structured involutions", n, limits.structured_involutions)?;
            let filter = Filter::new(class, false)?;
            if n < 3 {
                return Ok(zero());
            }
            let units = tree_frontier(n - 2, FRONTIER_DEPTH, involution_children);
            Ok(units
                .into_par_iter()
                .map(|root| {
                    let mut counts = zero();
                    tree_leaves(root, n - 2, involution_children, &mut |v| {
                        if fixed_points(v) == 0 {
                            return;
                        }
                        let pi = psi_inv(&Involution::from_vec_unchecked(v.to_vec())).expect("avoider with a fixed point");
                        if filter.accepts(pi.values()) {
                            counts[key(pi.values())] += 1;
                        }
                    });
                    counts
                })
                .reduce(zero, reduce))
        }
        (ObjectKind::Involution, _) => {
            Limits::check("exhaustive involutions", n, limits.exhaustive_involutions)?;
            let filter = Filter::new(class, true)?;
            if n == 0 {
                let mut counts = zero();
                if filter.accepts(&[]) {
                    counts[key(&[])] += 1;
                }
                return Ok(counts);
            }
            Ok((0..n)
                .into_par_iter()
                .map(|partner| {
                    let mut values = vec![0; n];
                    if partner == 0 {
                        values[n - 1] = n;
                    } else {
                        values[n - 1] = partner;
                        values[partner - 1] = n;
                    }
                    let mut counts = zero();
                    visit_involutions(&mut values, n - 1, &mut |v| {
                        if filter.accepts(v) {
                            counts[key(v)] += 1;
                        }
                    });
                    counts
                })
                .reduce(zero, reduce))
        }
        (ObjectKind::Permutation, Relation::Avoid | Relation::Eq(0)) => {
            Limits::check("structured permutations", n, limits.structured_permutations)?;
            let filter = Filter::new(class, false)?;
            let units = tree_frontier(n, FRONTIER_DEPTH - 2, permutation_children);
            Ok(units
                .into_par_iter()
                .map(|root| {
                    let mut counts = zero();
                    tree_leaves(root, n, permutation_children, &mut |v| {
                        if filter.accepts(v) {
                            counts[key(v)] += 1;
                        }
                    });
                    counts
                })
                .reduce(zero, reduce))
        }
        (ObjectKind::Permutation, _) => {
            Limits::check("exhaustive permutations", n, limits.exhaustive_permutations)?;
            let filter = Filter::new(class, true)?;
            if n == 0 {
                let mut counts = zero();
                if filter.accepts(&[]) {
                    counts[key(&[])] += 1;
                }
                return Ok(counts);
            }
            Ok((1..=n)
                .into_par_iter()
                .map(|first| {
                    let mut used = vec![false; n];
                    used[first - 1] = true;
                    let mut prefix = vec![first];
                    let mut counts = zero();
                    visit_permutations(&mut prefix, &mut used, &mut |v| {
                        if filter.accepts(v) {
                            counts[key(v)] += 1;
                        }
                    });
                    counts
                })
                .reduce(zero, reduce))
        }
    }
}

/// Exact number of objects of length `q.n` in the class.
pub fn count_class(q: &ClassQuery, limits: &Limits) -> Result<BigUint> {
    Ok(BigUint::from(tally(q, limits, 1, |_| 0)?[0]))
}

/// Counts for every length `0..=n_max`, as a series.
pub fn count_series(class: &ClassSpec, n_max: usize, limits: &Limits) -> Result<TruncatedSeries> {
    let coeffs = (0..=n_max).map(|n| count_class(&class.at(n), limits)).collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_unsigned(coeffs))
}

/// Counts of an involution class refined by the number of fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointTable {
    pub n_min: usize,
    pub n_max: usize,
    /// `rows[p][n - n_min]` is the number of objects of length `n` with `p`
    /// fixed points; `p` runs from 0 to the largest count seen.
    pub rows: BTreeMap<usize, Vec<BigUint>>,
    pub totals: Vec<BigUint>,
}

pub fn fixed_point_table(class: &ClassSpec, n_min: usize, n_max: usize, limits: &Limits) -> Result<FixedPointTable> {
    if class.kind != ObjectKind::Involution {
        return Err(Error::NotInvolutionQuery);
    }
    if n_min > n_max {
        return Err(Error::InvalidParams(format!("empty length range {n_min}..={n_max}")));
    }
    let columns = (n_min..=n_max)
        .map(|n| tally(&class.at(n), limits, n + 1, fixed_points))
        .collect::<Result<Vec<_>>>()?;
    let top = columns
        .iter()
        .flat_map(|col| col.iter().enumerate().filter(|(_, &c)| c > 0).map(|(p, _)| p))
        .max()
        .unwrap_or(0);
    let rows = (0..=top)
        .map(|p| (p, columns.iter().map(|col| BigUint::from(col.get(p).copied().unwrap_or(0))).collect()))
        .collect();
    let totals = columns.iter().map(|col| BigUint::from(col.iter().sum::<u64>())).collect();
    Ok(FixedPointTable { n_min, n_max, rows, totals })
}

impl FixedPointTable {
    pub fn get(&self, p: usize, n: usize) -> BigUint {
        self.rows.get(&p).map(|r| r[n - self.n_min].clone()).unwrap_or_default()
    }

    pub fn total(&self, n: usize) -> &BigUint {
        &self.totals[n - self.n_min]
    }

    /// Plain-text layout: a header of totals, one row per fixed-point count
    /// from the largest down to 0, and a footer of lengths.
    pub fn render(&self) -> String {
        let ns: Vec<usize> = (self.n_min..=self.n_max).collect();
        let cell = |p: usize, n: usize| if p > n { "-".to_string() } else { self.get(p, n).to_string() };
        let widths: Vec<usize> = ns
            .iter()
            .map(|&n| {
                let entries = self.rows.keys().map(|&p| cell(p, n).len()).max().unwrap_or(1);
                (self.total(n).to_string().len() + 1).max(entries).max(n.to_string().len() + 1)
            })
            .collect();
        let mut out = String::new();
        out.push_str("        ");
        for (&n, &w) in ns.iter().zip(&widths) {
            out.push_str(&format!(" {:>w$}", format!("={}", self.total(n))));
        }
        out.push('\n');
        for &p in self.rows.keys().rev() {
            out.push_str(&format!("{p:>7}:"));
            for (&n, &w) in ns.iter().zip(&widths) {
                out.push_str(&format!(" {:>w$}", cell(p, n)));
            }
            out.push('\n');
        }
        out.push_str("        ");
        for (&n, &w) in ns.iter().zip(&widths) {
            out.push_str(&format!(" {:>w$}", format!("{n}:")));
        }
        out.push_str(" [n]\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: serde_json::Map<String, Value> = self
            .rows
            .iter()
            .map(|(p, r)| (p.to_string(), json!(r.iter().map(|c| c.to_string()).collect::<Vec<_>>())))
            .collect();
        json!({
            "n_min": self.n_min,
            "n_max": self.n_max,
            "rows": rows,
            "totals": self.totals.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}
