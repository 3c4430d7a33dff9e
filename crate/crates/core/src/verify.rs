//! Formula-versus-oracle comparison and the ledger of known discrepancies.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::oracle::{count_series, Limits};
use crate::perm::{wedge_patterns, DwForm, PatternSpec};
use crate::series::{catalog_class, gf_catalog, CatalogName, Params};

const DEFAULT_LEDGER: &str = include_str!("../data/errata.json");

/// One catalog entry at one parameter choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyCase {
    pub name: CatalogName,
    pub params: Params,
}

impl fmt::Display for VerifyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params.to_string();
        if params.is_empty() {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}({params})", self.name)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub formula: BigInt,
    pub oracle: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: VerifyCase,
    pub checked_range: (usize, usize),
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    /// Whether the mismatch is recorded in the ledger.
    pub ledgered: bool,
}

impl VerificationReport {
    /// A match, or a mismatch the ledger already records.
    pub fn is_acceptable(&self) -> bool {
        self.status == Status::Match || self.ledgered
    }

    pub fn to_json(&self) -> Value {
        let first = self.first_mismatch.as_ref().map(|m| {
            json!({ "n": m.n, "formula": m.formula.to_string(), "oracle": m.oracle.to_string() })
        });
        json!({
            "entry": self.case.name.as_str(),
            "params": self.case.params.to_string(),
            "checked_range": [self.checked_range.0, self.checked_range.1],
            "status": match self.status { Status::Match => "MATCH", Status::Mismatch => "MISMATCH" },
            "first_mismatch": first,
            "ledgered": self.ledgered,
        })
    }
}

/// A recorded discrepancy between a closed form and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub entry: String,
    pub params: String,
    pub n: usize,
    pub formula: String,
    pub oracle: String,
    #[serde(default)]
    pub note: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ErratumLedger {
    pub entries: Vec<Erratum>,
}

impl ErratumLedger {
    /// The ledger shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json_str(DEFAULT_LEDGER).expect("bundled ledger is valid")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let entries = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("erratum ledger: {e}")))?;
        Ok(ErratumLedger { entries })
    }

    /// The entry recording exactly this mismatch, if any.
    pub fn lookup(&self, case: &VerifyCase, m: &Mismatch) -> Option<&Erratum> {
        let params = case.params.to_string();
        self.entries.iter().find(|e| {
            e.entry == case.name.as_str()
                && e.params == params
                && e.n == m.n
                && e.formula == m.formula.to_string()
                && e.oracle == m.oracle.to_string()
        })
    }
}

fn ks(name: CatalogName, range: std::ops::RangeInclusive<usize>) -> Vec<VerifyCase> {
    range.map(|k| VerifyCase { name, params: Params::k(k) }).collect()
}

/// Every `(sigma, form)` giving a distinct double-wedge of length `2l`.
fn double_wedges(l: usize, forms: &[DwForm]) -> Vec<(usize, crate::perm::Permutation, DwForm)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for sigma in wedge_patterns(l - 1) {
        for &form in forms {
            let spec = PatternSpec::Dw { l, sigma: sigma.clone(), form, tail_k: None };
            if seen.insert(spec.materialize().expect("wedge")) {
                out.push((l, sigma.clone(), form));
            }
        }
    }
    out
}

/// The parameter grid checked for one catalog entry.
pub fn default_cases(name: CatalogName) -> Vec<VerifyCase> {
    use CatalogName::*;
    let one = |params| vec![VerifyCase { name, params }];
    match name {
        IEmpty | JEmpty => one(Params::default()),
        IIncr | IR1Incr | IR2Incr | JIncr | JR1Incr => ks(name, 1..=6),
        IM213 | IR1M213 | IR1Cycle | JR1Cycle => ks(name, 2..=6),
        JM213 | JCycle | JR1M213 => ks(name, 3..=6),
        IKd => (2..=6)
            .flat_map(|k| (1..=(k / 2).min(3)).map(move |d| VerifyCase { name, params: Params::kd(k, d) }))
            .collect(),
        JKd => (4..=6)
            .flat_map(|k| (2..=k / 2).map(move |d| VerifyCase { name, params: Params::kd(k, d) }))
            .collect(),
        IDw => (1..=3)
            .flat_map(|l| double_wedges(l, &[DwForm::A, DwForm::B]))
            .map(|(l, sigma, form)| VerifyCase { name, params: Params::wedge(l, sigma, form, None) })
            .collect(),
        IDwTail | SExtWedge => {
            let forms: &[DwForm] = if name == SExtWedge { &[DwForm::A, DwForm::B, DwForm::C] } else { &[DwForm::A, DwForm::B] };
            let mut out = Vec::new();
            for l in 1..=3 {
                for (l, sigma, form) in double_wedges(l, forms) {
                    for k in 2 * l..=6 {
                        out.push(VerifyCase { name, params: Params::wedge(l, sigma.clone(), form, Some(k)) });
                    }
                }
            }
            out
        }
        I123_213 => (1..=6)
            .flat_map(|k| {
                (1..=2).map(move |variant| VerifyCase { name, params: Params { variant: Some(variant), ..Params::k(k) } })
            })
            .collect(),
        IRIncr => (1..=6)
            .flat_map(|k| (1..=2).map(move |r| VerifyCase { name, params: Params::kr(k, r) }))
            .collect(),
    }
}

/// All cases of the suite: one entry, or every entry for `None`.
pub fn suite(name: Option<CatalogName>) -> Vec<VerifyCase> {
    match name {
        Some(name) => default_cases(name),
        None => CatalogName::ALL.iter().flat_map(|&n| default_cases(n)).collect(),
    }
}

/// Compares coefficients `0..=n_max` of the closed form with oracle counts.
pub fn verify_case(case: &VerifyCase, n_max: usize, limits: &Limits, ledger: &ErratumLedger) -> Result<VerificationReport> {
    let formula = gf_catalog(case.name, &case.params, n_max)?;
    let class = catalog_class(case.name, &case.params)?;
    let oracle = count_series(&class, n_max, limits)?;
    let first_mismatch = (0..=n_max).find(|&n| formula.coeff(n) != oracle.coeff(n)).map(|n| Mismatch {
        n,
        formula: formula.coeff(n).clone(),
        oracle: oracle.coeff(n).to_biguint().expect("counts are nonnegative"),
    });
    let ledgered = first_mismatch.as_ref().is_some_and(|m| ledger.lookup(case, m).is_some());
    Ok(VerificationReport {
        case: case.clone(),
        checked_range: (0, n_max),
        status: if first_mismatch.is_some() { Status::Mismatch } else { Status::Match },
        first_mismatch,
        ledgered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_ledger_parses() {
        let ledger = ErratumLedger::builtin();
        for e in &ledger.entries {
            let name: CatalogName = e.entry.parse().unwrap();
            let params: Params = e.params.parse().unwrap();
            assert_eq!(params.to_string(), e.params);
            assert!(catalog_class(name, &params).is_ok());
        }
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(default_cases(CatalogName::IIncr).len(), 6);
        assert_eq!(default_cases(CatalogName::JKd).len(), 4);
        assert_eq!(default_cases(CatalogName::IKd).len(), 9);
        assert!(suite(None).len() > 100);
    }

    #[test]
    fn small_matches() {
        let ledger = ErratumLedger::default();
        let case = VerifyCase { name: CatalogName::IIncr, params: Params::k(4) };
        let report = verify_case(&case, 9, &Limits::default(), &ledger).unwrap();
        assert_eq!(report.status, Status::Match);
        assert_eq!(report.to_json()["status"], "MATCH");
    }

    #[test]
    fn ledger_lookup_is_exact() {
        let case = VerifyCase { name: CatalogName::JR1Cycle, params: Params::k(2) };
        let m = Mismatch { n: 3, formula: BigInt::from(0), oracle: BigUint::from(1u32) };
        let mut ledger = ErratumLedger::default();
        assert!(ledger.lookup(&case, &m).is_none());
        ledger.entries.push(Erratum {
            entry: "JR1_CYCLE".into(),
            params: "k=2".into(),
            n: 3,
            formula: "0".into(),
            oracle: "1".into(),
            note: String::new(),
        });
        assert!(ledger.lookup(&case, &m).is_some());
        let other = Mismatch { n: 4, ..m };
        assert!(ledger.lookup(&case, &other).is_none());
    }
}
