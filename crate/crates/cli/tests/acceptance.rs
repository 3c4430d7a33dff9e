//! Acceptance suite: one line per criterion, `PASS` or `FAIL` with the first
//! problem found. Run with `cargo test -p invol-cli --test acceptance`; pass
//! `-- --bless` to rewrite the golden table files from the current output.

use std::path::PathBuf;
use std::time::Instant;

use invol_cli::run_args;
use invol_core::bijections::{
    code_123_213, code_213, code_3412, decode_123_213, decode_213, decode_3412, phi, phi_inv, psi, psi_inv,
    theta_2134, theta_2134_inv, AbWord, CompositionCode,
};
use invol_core::oracle::{
    all_involutions, count_class, fixed_point_table, ClassSpec, Limits, OccurrenceConstraint, Relation,
};
use invol_core::perm::{Involution, PatternMatcher, PatternSpec, Permutation};
use invol_core::series::{gf_catalog, CatalogName, Params};
use invol_core::trees::{level_counts, system_star, transfer_counts};
use num_bigint::BigUint;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn lit(v: &[usize]) -> PatternSpec {
    PatternSpec::Literal(Permutation::new(v.to_vec()).expect("literal pattern"))
}

fn count(c132: Relation, extra: Vec<OccurrenceConstraint>, n: usize) -> Result<BigUint, String> {
    count_class(&ClassSpec::involutions(c132, extra).at(n), &Limits::default()).map_err(|e| e.to_string())
}

fn members(n: usize, keep: impl Fn(&[usize]) -> bool) -> Result<Vec<Involution>, String> {
    Ok(all_involutions(n, &Limits::default()).map_err(|e| e.to_string())?.filter(|i| keep(i.values())).collect())
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_tables(bless: bool) -> Check {
    for k in 3..=5 {
        let constraint = format!("incr:{k}:avoid");
        let out = run_args(["invol", "table", "--n-max", "15", "--constraint", constraint.as_str()], &Limits::default());
        ensure(out.code == 0, || format!("k={k}: exit {} {}", out.code, out.stderr))?;
        let path = golden_dir().join(format!("table_incr{k}.txt"));
        if bless {
            std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
        }
        let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if out.stdout != golden {
            let line = out.stdout.lines().zip(golden.lines()).position(|(a, b)| a != b).unwrap_or(0);
            return Err(format!("k={k}: output differs from golden at line {}", line + 1));
        }
    }
    Ok("three tables byte-identical".into())
}

fn ballot() -> Check {
    let class = ClassSpec::involutions(Relation::Avoid, vec![]);
    let table = fixed_point_table(&class, 0, 14, &Limits::default()).map_err(|e| e.to_string())?;
    for n in 0..=14usize {
        ensure(*table.total(n) == binomial(n, n / 2), || format!("n={n}: total {}", table.total(n)))?;
        for p in 0..=n {
            let expect = if (n + p) % 2 == 1 {
                BigUint::from(0u32)
            } else {
                binomial(n, (n + p) / 2) - binomial(n, (n + p) / 2 + 1)
            };
            ensure(table.get(p, n) == expect, || format!("n={n} p={p}: {} vs ballot {expect}", table.get(p, n)))?;
        }
    }
    Ok("n=0..14 totals and every fixed-point row".into())
}

fn formula_suite() -> Check {
    let out = run_args(["invol", "verify", "--suite", "all", "--n-max", "11"], &Limits::default());
    let lines = out.stdout.lines().count();
    let ledgered = out.stdout.lines().filter(|l| l.contains("\"ledgered\":true")).count();
    ensure(out.code == 0, || format!("exit {}: {}", out.code, out.stderr.trim()))?;
    Ok(format!("{lines} cases, {} match, {ledgered} ledgered mismatches", lines - ledgered))
}

fn named_forms() -> Check {
    let fib = |n: usize| (0..n).fold((1u64, 1u64), |(a, b), _| (b, a + b)).0;
    let avoid = |v: &[usize]| OccurrenceConstraint::avoid(lit(v));
    type Law = Box<dyn Fn(usize) -> u64>;
    let laws: Vec<(&str, Relation, Vec<OccurrenceConstraint>, Law)> = vec![
        ("I_123", Relation::Avoid, vec![avoid(&[1, 2, 3])], Box::new(|n| 1 << (n / 2))),
        ("I_1234", Relation::Avoid, vec![avoid(&[1, 2, 3, 4])], Box::new(fib)),
        ("I_231", Relation::Avoid, vec![avoid(&[2, 3, 1])], Box::new(|n| n as u64)),
        ("I_321", Relation::Avoid, vec![avoid(&[3, 2, 1])], Box::new(|n| (n / 2 + 1) as u64)),
        ("I_{213,321}", Relation::Avoid, vec![avoid(&[2, 1, 3]), avoid(&[3, 2, 1])], Box::new(|n| if n % 2 == 0 { 2 } else { 1 })),
        ("I_{213,4321}", Relation::Avoid, vec![avoid(&[2, 1, 3]), avoid(&[4, 3, 2, 1])], Box::new(|n| (n / 2 + 1) as u64)),
        ("J_2341", Relation::Eq(1), vec![avoid(&[2, 3, 4, 1])], Box::new(|n| (1 << ((n - 1) / 2)) - 1)),
    ];
    for (name, c132, extra, law) in &laws {
        for n in 3..=12 {
            let got = count(*c132, extra.clone(), n)?;
            ensure(got == BigUint::from(law(n)), || format!("{name}({n}) = {got}, expected {}", law(n)))?;
        }
    }
    for n in 3..=12 {
        let got = count(Relation::Eq(1), vec![], n)?;
        let expect = binomial(n - 2, (n - 3) / 2);
        ensure(got == expect, || format!("J_empty({n}) = {got}, expected {expect}"))?;
    }
    Ok(format!("{} laws, n=3..12", laws.len() + 1))
}

fn round_trips() -> Check {
    let p132 = PatternMatcher::new(&[1, 3, 2]);
    let mut checked = 0usize;
    for n in 0..=14 {
        let class = members(n, |v| !p132.occurs_in(v))?;
        for inv in &class {
            let w = phi(inv).map_err(|e| e.to_string())?;
            ensure(w.balance() == inv.fixed_point_count() as i64, || format!("phi({inv}): balance {}", w.balance()))?;
            ensure(phi_inv(&w).ok().as_ref() == Some(inv), || format!("phi_inv(phi({inv})) differs"))?;
        }
        checked += class.len();
    }
    for n in 2..=12 {
        let once = members(n, |v| p132.count_capped(v, 1) == 1)?;
        for pi in &once {
            let s = psi(pi).map_err(|e| format!("psi({pi}): {e}"))?;
            ensure(s.len() + 2 == pi.len() && s.fixed_point_count() == pi.fixed_point_count(), || {
                format!("psi({pi}) = {s} breaks the statistics")
            })?;
            ensure(psi_inv(&s).ok().as_ref() == Some(pi), || format!("psi_inv(psi({pi})) differs"))?;
        }
        let targets = members(n - 2, |v| !p132.occurs_in(v) && v.iter().enumerate().any(|(i, &x)| x == i + 1))?;
        ensure(targets.len() == once.len(), || format!("psi at n={n}: {} vs {} targets", once.len(), targets.len()))?;
        checked += once.len();
    }
    for k in 3..=5usize {
        let incr: Vec<usize> = (1..=k).collect();
        let mut m213 = vec![2, 1];
        m213.extend(3..=k);
        let (a, b) = (PatternMatcher::new(&incr), PatternMatcher::new(&m213));
        for n in 0..=10 {
            let side_a = members(n, |v| !p132.occurs_in(v) && !a.occurs_in(v))?;
            let side_b = members(n, |v| !p132.occurs_in(v) && !b.occurs_in(v))?;
            ensure(side_a.len() == side_b.len(), || format!("theta k={k} n={n}: class sizes differ"))?;
            let mut images = std::collections::BTreeSet::new();
            for pi in &side_a {
                let t = theta_2134(pi, k).map_err(|e| format!("theta({pi}): {e}"))?;
                ensure(!p132.occurs_in(t.values()) && !b.occurs_in(t.values()), || format!("theta({pi}) = {t} escapes"))?;
                let (p, q) = (pi.fixed_point_count(), t.fixed_point_count());
                let classes_ok = if p + 3 <= k { q == p } else { q + 2 >= k };
                ensure(classes_ok, || format!("theta k={k}: {pi} ({p} fixed) -> {t} ({q} fixed)"))?;
                ensure(theta_2134_inv(&t, k).ok().as_ref() == Some(pi), || format!("theta_inv(theta({pi})) differs"))?;
                images.insert(t);
            }
            ensure(images.len() == side_b.len(), || format!("theta k={k} n={n} is not onto"))?;
            checked += side_a.len();
        }
    }
    let (p213, p3412, p123) = (PatternMatcher::new(&[2, 1, 3]), PatternMatcher::new(&[3, 4, 1, 2]), PatternMatcher::new(&[1, 2, 3]));
    for n in 0..=12 {
        let c213 = members(n, |v| !p132.occurs_in(v) && !p213.occurs_in(v))?;
        for inv in &c213 {
            let code = code_213(inv).map_err(|e| e.to_string())?;
            ensure(decode_213(&code, n).ok().as_ref() == Some(inv), || format!("code_213 round trip at {inv}"))?;
        }
        ensure(CompositionCode::all_with_total(n / 2).len() == c213.len(), || format!("code_213 count at n={n}"))?;
        let c3412 = members(n, |v| !p132.occurs_in(v) && !p3412.occurs_in(v))?;
        for inv in &c3412 {
            let w = code_3412(inv).map_err(|e| e.to_string())?;
            ensure(w.weight() == n && decode_3412(&w).ok().as_ref() == Some(inv), || format!("code_3412 round trip at {inv}"))?;
        }
        ensure(AbWord::all_with_weight(n).len() == c3412.len(), || format!("code_3412 count at n={n}"))?;
        let c123 = members(n, |v| !p132.occurs_in(v) && !p213.occurs_in(v) && !p123.occurs_in(v))?;
        for inv in &c123 {
            let w = code_123_213(inv).map_err(|e| e.to_string())?;
            ensure(decode_123_213(&w, n).ok().as_ref() == Some(inv), || format!("code_123_213 round trip at {inv}"))?;
        }
        if n > 0 {
            let weight = if n % 2 == 1 { n / 2 } else { n / 2 + 1 };
            ensure(AbWord::all_with_weight(weight).len() == c123.len(), || format!("code_123_213 count at n={n}"))?;
        }
        checked += c213.len() + c3412.len() + c123.len();
    }
    Ok(format!("{checked} objects, zero failures"))
}

fn triple_agreement() -> Check {
    for k in 2..=6 {
        let sys = system_star(k).map_err(|e| e.to_string())?;
        let class = ClassSpec::involutions(Relation::Avoid, vec![OccurrenceConstraint::avoid(PatternSpec::Incr(k))]);
        let table = fixed_point_table(&class, 0, 14, &Limits::default()).map_err(|e| e.to_string())?;
        for n in 0..=14 {
            let rules: Vec<BigUint> = level_counts(&sys, n).into_values().collect();
            let matrix = transfer_counts(k, n).map_err(|e| e.to_string())?;
            ensure(rules == matrix, || format!("k={k} n={n}: rules and matrix differ"))?;
            for (p, c) in matrix.iter().enumerate() {
                ensure(table.get(p, n) == *c, || format!("k={k} n={n} p={p}: oracle {} vs {c}", table.get(p, n)))?;
            }
            ensure(table.rows.keys().all(|&p| p < k || table.get(p, n) == BigUint::from(0u32)), || {
                format!("k={k} n={n}: oracle has too many fixed points")
            })?;
        }
    }
    Ok("k=2..6, n=0..14".into())
}

fn identities() -> Check {
    let series = |name, p: &Params| gf_catalog(name, p, 20).map_err(|e| e.to_string());
    for k in 2..=8 {
        ensure(series(CatalogName::IIncr, &Params::k(k))? == series(CatalogName::IM213, &Params::k(k))?, || {
            format!("I_INCR != I_M213 at k={k}")
        })?;
    }
    let mut tails = 0;
    for l in 1..=3usize {
        for sigma in invol_core::perm::wedge_patterns(l - 1) {
            for form in [invol_core::perm::DwForm::A, invol_core::perm::DwForm::B] {
                for k in 2 * l..=8 {
                    let p = Params::wedge(l, sigma.clone(), form, Some(k));
                    ensure(series(CatalogName::IDwTail, &p)? == series(CatalogName::IIncr, &Params::k(k))?, || {
                        format!("I_DW_TAIL({p}) != I_INCR")
                    })?;
                    tails += 1;
                }
            }
        }
    }
    for n in 0..=12 {
        let dw = count(Relation::Avoid, vec![OccurrenceConstraint::avoid(lit(&[3, 4, 1, 2]))], n)?;
        let incr = count(Relation::Avoid, vec![OccurrenceConstraint::avoid(PatternSpec::Incr(4))], n)?;
        ensure(dw == incr, || format!("n={n}: I_3412 = {dw}, I_1234 = {incr}"))?;
    }
    Ok(format!("k=2..8 series, {tails} tail cases, 3412 vs 1234 for n=0..12"))
}

fn motzkin() -> Check {
    let mut m: Vec<BigUint> = vec![BigUint::from(1u32), BigUint::from(1u32)];
    for n in 1..10 {
        let convolution: BigUint = (0..n).map(|i| &m[i] * &m[n - 1 - i]).sum();
        m.push(&m[n] + convolution);
    }
    for (n, expect) in m.iter().enumerate() {
        let got = count(Relation::Ge(0), vec![OccurrenceConstraint::avoid(lit(&[1, 4, 3, 2]))], n)?;
        ensure(got == *expect, || format!("n={n}: {got} vs Motzkin {expect}"))?;
    }
    let listed: Vec<String> = m.iter().map(|c| c.to_string()).collect();
    Ok(format!("n=0..10: {}", listed.join(",")))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let bless = args.iter().any(|a| a == "--bless");
    let criteria: Vec<Criterion> = vec![
        ("fixed-point tables for 12...k, k=3,4,5", Box::new(move || golden_tables(bless))),
        ("central binomial and ballot laws", Box::new(ballot)),
        ("closed forms agree with the oracle or the ledger", Box::new(formula_suite)),
        ("named closed-form counts", Box::new(named_forms)),
        ("bijection round trips and statistics", Box::new(round_trips)),
        ("rules, matrix and oracle agree", Box::new(triple_agreement)),
        ("series identities", Box::new(identities)),
        ("Motzkin counts for 1432-avoiding involutions", Box::new(motzkin)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL [{}] {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
