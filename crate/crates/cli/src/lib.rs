//! Commands behind the `invol` binary. Each command returns its exit status
//! and the text destined for stdout, so it can be driven in-process.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use invol_core::bijections::{
    code_123_213, code_213, code_3412, decode_123_213, decode_213, decode_3412, phi, phi_inv, psi, psi_inv,
    theta_2134, theta_2134_inv, AbWord, CompositionCode, DyckWord,
};
use invol_core::oracle::{count_class, fixed_point_table, ClassSpec, Limits, ObjectKind, OccurrenceConstraint, Relation};
use invol_core::perm::Involution;
use invol_core::series::{gf_catalog, CatalogName, Params};
use invol_core::trees::{level_counts, system_star, transfer_counts};
use invol_core::verify::{suite, verify_case, ErratumLedger};
use invol_core::Error;
use num_bigint::BigUint;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_ERRATUM: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

/// Environment variable that replaces every oracle length cap.
pub const MAX_N_VAR: &str = "INVOL_MAX_N";

#[derive(Debug, Parser)]
#[command(name = "invol", version, about = "Exact enumeration of involutions restricted by 132")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Inv,
    Perm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum C132 {
    Avoid,
    Once,
    Free,
}

impl From<C132> for Relation {
    fn from(c: C132) -> Relation {
        match c {
            C132::Avoid => Relation::Avoid,
            C132::Once => Relation::Eq(1),
            C132::Free => Relation::Ge(0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Figure2,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Rules,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Map {
    Phi,
    #[value(name = "phi_inv")]
    PhiInv,
    Psi,
    #[value(name = "psi_inv")]
    PsiInv,
    Theta,
    #[value(name = "theta_inv")]
    ThetaInv,
    Code213,
    Decode213,
    Code3412,
    Decode3412,
    Code123213,
    Decode123213,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the objects of one length in a class
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "inv")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "avoid")]
        c132: C132,
        /// `<pattern>:<avoid|eq:r|ge:r>`, e.g. `incr:4:avoid`; repeatable
        #[arg(long = "constraint")]
        constraints: Vec<String>,
    },
    /// Tabulate an involution class by length and number of fixed points
    Table {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "avoid")]
        c132: C132,
        #[arg(long = "constraint")]
        constraints: Vec<String>,
        #[arg(long, value_enum, default_value = "figure2")]
        format: TableFormat,
    },
    /// Expand a closed-form generating function
    Series {
        /// Catalog name, e.g. `I_INCR`
        #[arg(long)]
        gf: String,
        /// `k=5,d=2`; wedge entries take `l`, `sigma` and `form`
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        order: usize,
    },
    /// Compare closed forms with oracle counts
    Verify {
        /// `all` or one catalog name
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 11)]
        n_max: usize,
        /// Erratum ledger to use instead of the built-in one
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Apply a bijection or coding
    Biject {
        #[arg(long, value_enum)]
        map: Map,
        #[arg(long)]
        input: String,
        /// Pattern length for `theta`
        #[arg(long)]
        k: Option<usize>,
        /// Target length for `decode213` and `decode123213`
        #[arg(long)]
        n: Option<usize>,
    },
    /// Level counts of the fixed-point succession system
    Succession {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "rules")]
        engine: Engine,
    },
}

/// Exit status plus the stdout and stderr text of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn json(v: Value) -> Self {
        Self::ok(format!("{v}\n"))
    }

    fn fail(e: &Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => EXIT_RESOURCE,
            Error::NegativeValuation { .. } => EXIT_ERRATUM,
            _ => EXIT_USAGE,
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Limits from `INVOL_MAX_N` if it is set to a number, else the defaults.
pub fn limits_from_env() -> Limits {
    std::env::var(MAX_N_VAR).ok().and_then(|v| v.trim().parse().ok()).map(Limits::uniform).unwrap_or_default()
}

pub fn run(cli: &Cli, limits: &Limits) -> Outcome {
    let result = match &cli.command {
        Command::Count { n, kind, c132, constraints } => cmd_count(*n, *kind, *c132, constraints, limits),
        Command::Table { n_min, n_max, c132, constraints, format } => {
            cmd_table(*n_min, *n_max, *c132, constraints, *format, limits)
        }
        Command::Series { gf, params, order } => return cmd_series(gf, params, *order),
        Command::Verify { suite, n_max, ledger } => return cmd_verify(suite, *n_max, ledger.as_ref(), limits),
        Command::Biject { map, input, k, n } => cmd_biject(*map, input, *k, *n),
        Command::Succession { k, n, engine } => return cmd_succession(*k, *n, *engine),
    };
    result.unwrap_or_else(|e| Outcome::fail(&e))
}

/// Parses `args` (including the program name) and runs the command; parse
/// failures come back as exit status 2 with clap's message.
pub fn run_args<I, T>(args: I, limits: &Limits) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, limits),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

fn class_of(kind: Kind, c132: C132, constraints: &[String]) -> invol_core::Result<ClassSpec> {
    let extra = constraints.iter().map(|c| c.parse::<OccurrenceConstraint>()).collect::<invol_core::Result<Vec<_>>>()?;
    Ok(match kind {
        Kind::Inv => ClassSpec::involutions(c132.into(), extra),
        Kind::Perm => ClassSpec::permutations(c132.into(), extra),
    })
}

fn cmd_count(n: usize, kind: Kind, c132: C132, constraints: &[String], limits: &Limits) -> invol_core::Result<Outcome> {
    let class = class_of(kind, c132, constraints)?;
    let count = count_class(&class.at(n), limits)?;
    Ok(Outcome::json(json!({ "n": n, "count": count.to_string() })))
}

fn cmd_table(
    n_min: usize,
    n_max: usize,
    c132: C132,
    constraints: &[String],
    format: TableFormat,
    limits: &Limits,
) -> invol_core::Result<Outcome> {
    let class = class_of(Kind::Inv, c132, constraints)?;
    debug_assert_eq!(class.kind, ObjectKind::Involution);
    let table = fixed_point_table(&class, n_min, n_max, limits)?;
    Ok(match format {
        TableFormat::Figure2 => Outcome::ok(table.render()),
        TableFormat::Json => Outcome::json(table.to_json()),
    })
}

fn cmd_series(gf: &str, params: &str, order: usize) -> Outcome {
    let parsed = gf.parse::<CatalogName>().and_then(|name| Ok((name, params.parse::<Params>()?)));
    let (name, params) = match parsed {
        Ok(v) => v,
        Err(e) => return Outcome::fail(&e),
    };
    match gf_catalog(name, &params, order) {
        Ok(series) => {
            let mut v = series.to_json();
            v["gf"] = json!(name.as_str());
            v["params"] = json!(params.to_string());
            Outcome::json(v)
        }
        Err(Error::NegativeValuation { exponent }) => Outcome {
            code: EXIT_ERRATUM,
            stdout: format!(
                "{}\n",
                json!({ "erratum": { "gf": name.as_str(), "params": params.to_string(), "negative_valuation": exponent } })
            ),
            stderr: format!("error: {}\n", Error::NegativeValuation { exponent }),
        },
        Err(e) => Outcome::fail(&e),
    }
}

fn cmd_verify(suite_name: &str, n_max: usize, ledger_path: Option<&PathBuf>, limits: &Limits) -> Outcome {
    let ledger = match ledger_path {
        None => ErratumLedger::builtin(),
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match ErratumLedger::from_json_str(&text) {
                Ok(l) => l,
                Err(e) => return Outcome::fail(&e),
            },
            Err(e) => return Outcome::fail(&Error::Malformed(format!("cannot read {}: {e}", path.display()))),
        },
    };
    let name = match suite_name {
        "all" => None,
        other => match other.parse::<CatalogName>() {
            Ok(n) => Some(n),
            Err(e) => return Outcome::fail(&e),
        },
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let mut unledgered = 0;
    let cases = suite(name);
    for case in &cases {
        match verify_case(case, n_max, limits, &ledger) {
            Ok(report) => {
                if !report.is_acceptable() {
                    unledgered += 1;
                    stderr.push_str(&format!("unledgered mismatch: {case}\n"));
                }
                stdout.push_str(&format!("{}\n", report.to_json()));
            }
            Err(e) => {
                let mut out = Outcome::fail(&e);
                out.stdout = stdout;
                out.stderr = format!("{stderr}{case}: {}", out.stderr);
                return out;
            }
        }
    }
    stderr.push_str(&format!("{} cases, {unledgered} unledgered mismatches\n", cases.len()));
    Outcome { code: if unledgered == 0 { EXIT_OK } else { EXIT_MISMATCH }, stdout, stderr }
}

fn involution_stats(inv: &Involution) -> Value {
    json!({ "value": inv.to_string(), "length": inv.len(), "fixed_points": inv.fixed_point_count() })
}

fn dyck_stats(w: &DyckWord) -> Value {
    json!({ "value": w.to_string(), "length": w.len(), "balance": w.balance() })
}

fn composition_stats(c: &CompositionCode) -> Value {
    json!({ "value": c.parts(), "total": c.total() })
}

fn word_stats(w: &AbWord) -> Value {
    json!({ "value": w.to_string(), "weight": w.weight() })
}

fn need(v: Option<usize>, flag: &str) -> invol_core::Result<usize> {
    v.ok_or_else(|| Error::InvalidParams(format!("--{flag} is required for this map")))
}

fn cmd_biject(map: Map, input: &str, k: Option<usize>, n: Option<usize>) -> invol_core::Result<Outcome> {
    let inv = || input.parse::<Involution>();
    let word = || input.parse::<AbWord>();
    let (from, to) = match map {
        Map::Phi => {
            let i = inv()?;
            (involution_stats(&i), dyck_stats(&phi(&i)?))
        }
        Map::PhiInv => {
            let w: DyckWord = input.parse()?;
            (dyck_stats(&w), involution_stats(&phi_inv(&w)?))
        }
        Map::Psi => {
            let i = inv()?;
            (involution_stats(&i), involution_stats(&psi(&i)?))
        }
        Map::PsiInv => {
            let i = inv()?;
            (involution_stats(&i), involution_stats(&psi_inv(&i)?))
        }
        Map::Theta => {
            let i = inv()?;
            (involution_stats(&i), involution_stats(&theta_2134(&i, need(k, "k")?)?))
        }
        Map::ThetaInv => {
            let i = inv()?;
            (involution_stats(&i), involution_stats(&theta_2134_inv(&i, need(k, "k")?)?))
        }
        Map::Code213 => {
            let i = inv()?;
            (involution_stats(&i), composition_stats(&code_213(&i)?))
        }
        Map::Decode213 => {
            let code: CompositionCode = input.trim().trim_start_matches('[').trim_end_matches(']').parse()?;
            (composition_stats(&code), involution_stats(&decode_213(&code, need(n, "n")?)?))
        }
        Map::Code3412 => {
            let i = inv()?;
            (involution_stats(&i), word_stats(&code_3412(&i)?))
        }
        Map::Decode3412 => {
            let w = word()?;
            (word_stats(&w), involution_stats(&decode_3412(&w)?))
        }
        Map::Code123213 => {
            let i = inv()?;
            (involution_stats(&i), word_stats(&code_123_213(&i)?))
        }
        Map::Decode123213 => {
            let w = word()?;
            (word_stats(&w), involution_stats(&decode_123_213(&w, need(n, "n")?)?))
        }
    };
    let name = map.to_possible_value().expect("every map has a name").get_name().to_string();
    Ok(Outcome::json(json!({ "map": name, "input": from, "output": to })))
}

fn cmd_succession(k: usize, n: usize, engine: Engine) -> Outcome {
    let both = system_star(k).and_then(|sys| {
        let rules: Vec<BigUint> = level_counts(&sys, n).into_values().collect();
        Ok((rules, transfer_counts(k, n)?))
    });
    let (rules, matrix) = match both {
        Ok(v) => v,
        Err(e) => return Outcome::fail(&e),
    };
    if rules != matrix {
        return Outcome {
            code: EXIT_MISMATCH,
            stdout: String::new(),
            stderr: format!("error: rule and matrix engines disagree at k={k}, n={n}\n"),
        };
    }
    let (name, counts) = match engine {
        Engine::Rules => ("rules", rules),
        Engine::Matrix => ("matrix", matrix),
    };
    let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    Outcome::json(json!({ "k": k, "n": n, "engine": name, "counts": counts }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(args: &[&str]) -> (i32, Value) {
        let mut full = vec!["invol"];
        full.extend_from_slice(args);
        let out = run_args(full, &Limits::default());
        let v = if out.stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(out.stdout.trim()).unwrap() };
        (out.code, v)
    }

    #[test]
    fn count_examples() {
        let (code, v) = run_json(&["count", "--n", "7", "--kind", "inv", "--c132", "avoid", "--constraint", "incr:4:avoid"]);
        assert_eq!(code, 0);
        assert_eq!(v, json!({"n": 7, "count": "21"}));
        assert_eq!(run_json(&["count", "--n", "0"]).1["count"], "1");
        assert_eq!(run_json(&["count", "--n", "9", "--c132", "once"]).1["count"], "35");
        assert_eq!(run_json(&["count", "--n", "5", "--kind", "perm"]).1["count"], "42");
        assert_eq!(run_json(&["count", "--n", "3", "--kind", "perm", "--c132", "free"]).1["count"], "6");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_json(&["count", "--n", "x"]).0, EXIT_USAGE);
        assert_eq!(run_json(&["count", "--n", "4", "--constraint", "bogus"]).0, EXIT_USAGE);
        assert_eq!(run_json(&["count", "--n", "40", "--c132", "free"]).0, EXIT_RESOURCE);
        assert_eq!(run_json(&["table", "--n-max", "3", "--constraint", "incr:2:eq:-1"]).0, EXIT_USAGE);
        assert_eq!(run_json(&["series", "--gf", "I_KD", "--params", "k=4,d=3", "--order", "4"]).0, EXIT_USAGE);
        assert_eq!(run_json(&["biject", "--map", "psi", "--input", "1 2 3"]).0, EXIT_USAGE);
        assert_eq!(run_json(&["succession", "--k", "1", "--n", "3"]).0, EXIT_USAGE);
        let limits = Limits::uniform(5);
        assert_eq!(run_args(["invol", "count", "--n", "6"], &limits).code, EXIT_RESOURCE);
    }

    #[test]
    fn table_single_column() {
        let out = run_args(["invol", "table", "--n-max", "1"], &Limits::default());
        assert_eq!(out.stdout, "         =1\n      1:  1\n      0:  0\n         1: [n]\n");
        let (_, v) = run_json(&["table", "--n-max", "2", "--format", "json"]);
        assert_eq!(v["totals"], json!(["1", "2"]));
    }

    #[test]
    fn series_examples() {
        let (code, v) = run_json(&["series", "--gf", "I_EMPTY", "--order", "6"]);
        assert_eq!(code, 0);
        assert_eq!(v["coeffs"], json!(["1", "1", "2", "3", "6", "10", "20"]));
        let (_, v) = run_json(&["series", "--gf", "JR1_INCR", "--params", "k=5", "--order", "10"]);
        assert!(v["coeffs"].as_array().unwrap().iter().all(|c| c == "0"));
        let (_, v) = run_json(&["series", "--gf", "I_123_213", "--params", "k=3", "--order", "6"]);
        assert_eq!(v["coeffs"], json!(["1", "1", "2", "1", "3", "2", "5"]));
        let parsed = invol_core::series::TruncatedSeries::from_json(&v).unwrap();
        assert_eq!(parsed.order(), 6);
    }

    #[test]
    fn verify_small_suites() {
        let out = run_args(["invol", "verify", "--suite", "JR1_INCR", "--n-max", "8"], &Limits::default());
        assert_eq!(out.code, 0);
        assert!(out.stdout.lines().all(|l| l.contains("\"MATCH\"")));
        let out = run_args(["invol", "verify", "--suite", "J_KD", "--n-max", "8"], &Limits::default());
        assert_eq!(out.code, 0);
        let first: Value = serde_json::from_str(out.stdout.lines().next().unwrap()).unwrap();
        assert_eq!(first["params"], "k=4,d=2");
        assert_eq!(first["status"], "MISMATCH");
        assert_eq!(first["ledgered"], true);
    }

    #[test]
    fn verify_with_empty_ledger_fails() {
        let dir = std::env::temp_dir().join(format!("invol-ledger-{}", std::process::id()));
        std::fs::write(&dir, "[]").unwrap();
        let path = dir.to_str().unwrap();
        let out = run_args(["invol", "verify", "--suite", "J_KD", "--n-max", "6", "--ledger", path], &Limits::default());
        std::fs::remove_file(&dir).ok();
        assert_eq!(out.code, EXIT_MISMATCH);
    }

    #[test]
    fn biject_examples() {
        let (_, v) = run_json(&["biject", "--map", "phi", "--input", "2 1"]);
        assert_eq!(v["output"], json!({"value": "xX", "length": 2, "balance": 0}));
        let (_, v) = run_json(&["biject", "--map", "psi", "--input", "1 3 2"]);
        assert_eq!(v["output"]["value"], "1");
        let (_, v) = run_json(&["biject", "--map", "code213", "--input", "4 2 3 1"]);
        assert_eq!(v["output"]["value"], json!([1, 1]));
        let (_, v) = run_json(&["biject", "--map", "decode213", "--input", "[1,1]", "--n", "4"]);
        assert_eq!(v["output"]["value"], "4 2 3 1");
        let (_, v) = run_json(&["biject", "--map", "decode123213", "--input", "bb", "--n", "5"]);
        assert_eq!(v["output"]["value"], "4 5 3 1 2");
        let (code, _) = run_json(&["biject", "--map", "theta", "--input", "1 2"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn succession_examples() {
        let (_, v) = run_json(&["succession", "--k", "3", "--n", "4", "--engine", "matrix"]);
        assert_eq!(v["counts"], json!(["2", "0", "2"]));
        let (_, v) = run_json(&["succession", "--k", "4", "--n", "5", "--engine", "rules"]);
        assert_eq!(v["counts"], json!(["0", "5", "0", "3"]));
        let (_, v) = run_json(&["succession", "--k", "2", "--n", "0"]);
        assert_eq!(v["counts"], json!(["1", "0"]));
    }
}
