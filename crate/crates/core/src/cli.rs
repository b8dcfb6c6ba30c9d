//! Command-line front end: argument parsing, dispatch, JSON reports and the
//! `--expect paper` regression mode.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::arith::factorize;
use crate::algebra::{parse_rational, Rational, RootOfUnity};
use crate::angles::{eliminant, tau_recover, verify_angle, AngleConfig, CaseId, Slot, TauValue};
use crate::classify::{
    classification_table, dodecagonal_extra_angles, dodecagonal_report, fivetuple_search, parse_orders, search_case4,
    subcase_regressions, summarize_case4, superrect_extra_angles, Case4Class,
};
use crate::coset::{certify, constants, gamma_decompose};
use crate::data::{checksums, EXPECT_PAPER};
use crate::error::{Error, Result};
use crate::examples::{ec_sweep, factor_variant, genus5_verify, j_invariant};
use crate::spaces::{find_rational_angles, SpaceSpec};
use crate::surface::{defined_over_q, estar_check};
use crate::uniteq::{brute_solve, cj_solve, galois_reduce, UnitRelation};

#[derive(Debug, Clone, Parser)]
#[command(name = "lattangle", version, about = "Rational angles in planar lattices, computed exactly")]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Compare the results against a bundled expectation set.
    #[arg(long, value_enum, global = true)]
    pub expect: Option<Expect>,
    /// Worker threads for sharded searches (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    /// Bits of precision for complex approximations in the output.
    #[arg(long, default_value_t = 80, global = true)]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Paper,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Solve a unit equation (brute force with --bound, Conway-Jones otherwise).
    SolveUnit {
        /// Relation JSON, or @path.
        #[arg(long)]
        relation: String,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        galois_reduce: bool,
    },
    /// Evaluate the eliminant of a configuration.
    Eliminant(ConfigArgs),
    /// Check one angle `(τ+b0, τ+b1)` against a squared argument.
    Verify {
        /// τ as Cyclo or TauValue JSON, or @path.
        #[arg(long)]
        tau: String,
        /// `b0,b1`; `inf` stands for the vector 1.
        #[arg(long)]
        pair: String,
        /// Squared argument `k/n`.
        #[arg(long)]
        musq: String,
    },
    /// List the rational angles of the space ⟨1, τ⟩.
    Angles {
        #[arg(long)]
        tau: String,
        /// Only squared arguments of order at most this.
        #[arg(long)]
        max_order: Option<u64>,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        target: SearchTarget,
    },
    /// Regression reports.
    Report {
        #[arg(value_enum)]
        which: ReportKind,
        /// Order bound for `fivetuple` (default 24) or `extra-angles` (default 30).
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Family-or-bounded-order certificate of a solution.
    Coset {
        /// Configuration JSON, or @path.
        #[arg(long)]
        solution: String,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        power: Option<u32>,
    },
    /// The order constants as exact integers.
    Constants,
    /// Multiples of the generator of the elliptic family and their quadruples.
    Ec {
        #[arg(long, default_value_t = 6)]
        multiples: usize,
        #[arg(long)]
        verify: bool,
    },
    /// The genus-5 configuration.
    Genus5,
    /// Surface checks at fixed roots.
    Surface {
        /// `kx/nx,ky/ny,kz/nz`.
        #[arg(long)]
        roots: String,
        #[arg(long, value_enum)]
        check: Option<SurfaceCheck>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    #[arg(long = "case")]
    pub case_id: String,
    /// Comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub params: String,
    /// Comma-separated `k/n`.
    #[arg(long, allow_hyphen_values = true)]
    pub roots: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum SearchTarget {
    /// Rational 4-tuples with roots of the given common orders.
    Case4 {
        /// `a..b`, `div:n` or a comma list.
        #[arg(long, default_value = "div:60")]
        orders: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Dodecagonal,
    DodecagonalAngles,
    Table,
    Fivetuple,
    ExtraAngles,
    Subcases,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceCheck {
    Identity,
    Defq,
}

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub timestamp: u64,
    pub checksums: BTreeMap<&'static str, String>,
    pub results: Value,
    pub expectations: Vec<Expectation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.expectations.iter().all(|e| e.pass)
    }

    /// Exit code: 0 when every expectation holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn json_arg(s: &str) -> Result<Value> {
    serde_json::from_str(&read_arg(s)?).map_err(|e| Error::Parse(e.to_string()))
}

fn roots_arg(s: &str) -> Result<Vec<RootOfUnity>> {
    s.split(',').map(|r| r.trim().parse()).collect()
}

fn three_roots(s: &str) -> Result<[RootOfUnity; 3]> {
    roots_arg(s)?.try_into().map_err(|_| Error::Invalid("expected three roots".into()))
}

fn rationals_arg(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|r| parse_rational(r.trim())).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn expectation(name: impl Into<String>, pass: bool) -> Expectation {
    Expectation { name: name.into(), pass }
}

fn paper() -> Value {
    serde_json::from_str(EXPECT_PAPER).expect("bundled expectations parse")
}

/// Runs the command inside a pool of `jobs` threads.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if cfg.jobs > 0 {
        builder = builder.num_threads(cfg.jobs);
    }
    let pool = builder.build().map_err(|e| Error::Invalid(e.to_string()))?;
    pool.install(|| dispatch(cfg))
}

fn dispatch(cfg: &RunConfig) -> Result<Report> {
    let expect = cfg.expect.is_some();
    let bits = cfg.precision;
    let (command, results, expectations): (String, Value, Vec<Expectation>) = match &cfg.command {
        Command::SolveUnit { relation, bound, galois_reduce: reduce } => {
            let rel = UnitRelation::from_json(&json_arg(relation)?)?;
            let results = match bound {
                Some(b) => {
                    let mut recs = brute_solve(&rel, *b)?;
                    if *reduce {
                        recs = galois_reduce(recs);
                    }
                    json!({"method": "brute", "bound": b, "solutions": recs})
                }
                None => json!({"method": "conwayJones", "families": cj_solve(&rel)?}),
            };
            ("solve-unit".into(), results, vec![])
        }
        Command::Eliminant(a) => {
            let case: CaseId = a.case_id.parse()?;
            let params = rationals_arg(&a.params)?;
            let c = AngleConfig::new(case, params, three_roots(&a.roots)?)?;
            let value = eliminant(&c)?;
            let tau = if value.is_zero() {
                tau_recover(&c).ok().map(|r| TauValue::Explicit(r.tau).to_json())
            } else {
                None
            };
            ("eliminant".into(), json!({"config": c, "value": value, "isZero": value.is_zero(), "tau": tau}), vec![])
        }
        Command::Verify { tau, pair, musq } => {
            let t = TauValue::from_json(&json_arg(tau)?)?;
            let (b0, b1) = pair.split_once(',').ok_or_else(|| Error::Invalid("--pair expects b0,b1".into()))?;
            let (b0, b1): (Slot, Slot) = (b0.parse()?, b1.parse()?);
            let mu: RootOfUnity = musq.parse()?;
            let holds = verify_angle(&t, &b0, &b1, &mu)?;
            let z = t.embed(bits);
            let results = json!({
                "pair": [b0.to_string(), b1.to_string()], "muSq": mu, "holds": holds, "tau": [z.re(), z.im()]
            });
            ("verify".into(), results, vec![])
        }
        Command::Angles { tau, max_order } => {
            let v = json_arg(tau)?;
            let t = match TauValue::from_json(&v)? {
                TauValue::Explicit(t) => t,
                _ => return Err(Error::Precondition("angle search needs an explicit τ".into())),
            };
            let mus: Option<Vec<RootOfUnity>> = max_order.map(|m| {
                let mut all: Vec<RootOfUnity> = (1..=m).flat_map(RootOfUnity::all_of_order_dividing).collect();
                all.sort();
                all.dedup();
                all
            });
            let s = find_rational_angles(&SpaceSpec::explicit(t, "cli"), mus.as_deref())?;
            let results = json!({
                "angles": s.angles.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
                "cmInfinite": s.cm_infinite,
                "cm": s.cm,
            });
            ("angles".into(), results, vec![])
        }
        Command::Search { target: SearchTarget::Case4 { orders } } => {
            let os = parse_orders(orders)?;
            let sols = search_case4(&os)?;
            let summary = summarize_case4(&os, &sols)?;
            let mut ex = vec![];
            if expect {
                let p = &paper()["search case4"];
                let other = summary.counts.get(&Case4Class::Other).copied().unwrap_or(0);
                ex.push(expectation("only superrectangular or dodecagonal", other == 0));
                let allowed: Vec<&str> = p["dodecagonalClasses"].as_array().unwrap().iter().filter_map(|v| v.as_str()).collect();
                ex.push(expectation(
                    "dodecagonal classes match tau1/tau2",
                    summary.classes.iter().all(|c| c.matches.as_deref().is_some_and(|m| allowed.contains(&m))),
                ));
                ex.push(expectation("summary consistent", summary.consistent()));
                if let Some(o) = p["orderSets"].get(orders.as_str()) {
                    if let Some(n) = o.get("dodecagonal").and_then(Value::as_u64) {
                        let d = summary.counts.get(&Case4Class::Dodecagonal).copied().unwrap_or(0) as u64;
                        ex.push(expectation(format!("{orders}: dodecagonal solutions = {n}"), d == n));
                    }
                    if let Some(n) = o.get("homothetyClasses").and_then(Value::as_u64) {
                        ex.push(expectation(format!("{orders}: homothety classes = {n}"), summary.classes.len() as u64 == n));
                    }
                }
            }
            (format!("search case4 --orders {orders}"), json!({"summary": summary, "solutions": sols}), ex)
        }
        Command::Report { which, bound } => report(*which, *bound, expect)?,
        Command::Coset { solution, prime, power } => {
            let c = AngleConfig::from_json(&json_arg(solution)?)?;
            let results = match (prime, power) {
                (Some(p), m) => json!({"gamma": gamma_decompose(&c, *p, m.unwrap_or(1))?}),
                (None, None) => json!({"certificate": certify(&c)?}),
                (None, Some(_)) => return Err(Error::Invalid("--power needs --prime".into())),
            };
            ("coset".into(), results, vec![])
        }
        Command::Constants => {
            let c = constants();
            let mut ex = vec![
                expectation("thmBound = 2·N0", c.thm_bound == &c.n0 * 2),
                expectation("N0 factorization round-trip", factor_round_trip(&c.n0)),
            ];
            if expect {
                let p = &paper()["constants"];
                ex.push(expectation("N0 matches", p["n0"].as_str() == Some(c.n0.to_string().as_str())));
                ex.push(expectation("bound matches", p["thmBound"].as_str() == Some(c.thm_bound.to_string().as_str())));
            }
            ("constants".into(), json!({"constants": c, "n0Factorization": n0_factorization()}), ex)
        }
        Command::Ec { multiples, verify } => {
            let sweep = ec_sweep(*multiples)?;
            let oracle = factor_variant();
            let valid: Vec<_> = sweep.iter().filter(|e| e.report.is_some()).collect();
            let mut ex = vec![];
            if *verify || expect {
                ex.push(expectation("all checks pass", valid.iter().all(|e| e.report.as_ref().unwrap().ok())));
                let mut phis: Vec<&Rational> = valid.iter().map(|e| &e.report.as_ref().unwrap().phi).collect();
                phis.sort();
                phis.dedup();
                ex.push(expectation("phi values distinct", phis.len() == valid.len()));
            }
            if expect {
                let p = &paper()["ec"];
                ex.push(expectation("j-invariant", p["jInvariant"].as_str() == Some(j_invariant().to_string().as_str())));
                let first = valid.first().map(|e| e.multiple as u64);
                ex.push(expectation("first valid multiple", first == p["firstValidMultiple"].as_u64()));
                ex.push(expectation("factor variant", p["factorVariant"] == to_value(&oracle.winner)));
                ex.push(expectation("every later multiple valid", valid.len() + 1 == sweep.len()));
            }
            let entries: Vec<Value> = sweep
                .iter()
                .map(|e| {
                    let mut v = to_value(e);
                    if !*verify {
                        if let Some(r) = v.get_mut("report").filter(|r| !r.is_null()) {
                            r.as_object_mut().unwrap().remove("checks");
                        }
                    }
                    v
                })
                .collect();
            let results = json!({
                "jInvariant": j_invariant().to_string(),
                "factorVariant": oracle,
                "valid": valid.len(),
                "multiples": entries,
            });
            (format!("ec --multiples {multiples}"), results, ex)
        }
        Command::Genus5 => {
            let r = genus5_verify()?;
            let ex = if expect { vec![expectation("genus-5 checks", r.ok())] } else { vec![] };
            ("genus5".into(), json!({"report": r, "ok": r.ok()}), ex)
        }
        Command::Surface { roots, check } => {
            let [x, y, z] = three_roots(roots)?;
            let mut results = serde_json::Map::new();
            if check.is_none() || *check == Some(SurfaceCheck::Identity) {
                results.insert("identity".into(), to_value(&estar_check(&x, &y, &z)?));
            }
            if check.is_none() || *check == Some(SurfaceCheck::Defq) {
                results.insert("definedOverQ".into(), to_value(&defined_over_q(&x, &y, &z)?));
            }
            ("surface".into(), Value::Object(results), vec![])
        }
    };
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Ok(Report { command, timestamp, checksums: checksums(), results, expectations })
}

fn report(which: ReportKind, bound: Option<u64>, expect: bool) -> Result<(String, Value, Vec<Expectation>)> {
    let p = paper();
    let mut ex = vec![];
    let (name, results) = match which {
        ReportKind::Dodecagonal => {
            let r = dodecagonal_report()?;
            if expect {
                ex.push(expectation("dodecagonal claims", r.ok() == p["report dodecagonal"]["ok"].as_bool().unwrap()));
            }
            ("report dodecagonal", json!({"report": r, "ok": r.ok()}))
        }
        ReportKind::DodecagonalAngles => {
            let r = dodecagonal_extra_angles()?;
            if expect {
                let want = &p["report dodecagonal-angles"]["pairs"];
                for d in &r {
                    let key = format!("tau{}", d.tau);
                    let mut tuple: Vec<String> = d.tuple.iter().map(|b| b.to_string()).collect();
                    tuple.sort();
                    let mut exp: Vec<String> =
                        want[&key].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
                    exp.sort();
                    ex.push(expectation(format!("{key} pairs"), d.pairs_match && tuple == exp));
                    ex.push(expectation(format!("{key} verified"), d.verified && d.no_fivetuple));
                }
            }
            ("report dodecagonal-angles", to_value(&r))
        }
        ReportKind::Table => {
            let t = classification_table();
            if expect {
                let rows = t.as_array().map_or(0, |a| a.len()) as u64;
                ex.push(expectation("table rows", Some(rows) == p["report table"]["rows"].as_u64()));
            }
            ("report table", t)
        }
        ReportKind::Fivetuple => {
            let r = fivetuple_search(bound.unwrap_or(24))?;
            if expect {
                let d = p["report fivetuple"]["thetaOrdersDivide"].as_u64().unwrap();
                ex.push(expectation(format!("θ0 orders divide {d}"), r.theta0_orders.iter().all(|o| d % o == 0)));
            }
            ("report fivetuple", to_value(&r))
        }
        ReportKind::ExtraAngles => {
            let r = superrect_extra_angles(bound.unwrap_or(30))?;
            if expect {
                let n = p["report extra-angles"]["unexpected"].as_u64().unwrap();
                ex.push(expectation("no unexpected extra angles", r.unexpected as u64 == n));
            }
            ("report extra-angles", to_value(&r))
        }
        ReportKind::Subcases => {
            let r = subcase_regressions()?;
            if expect {
                ex.push(expectation("leading parts match", r.iter().all(|s| s.leading_matches != Some(false))));
                ex.push(expectation("no identically vanishing member", r.iter().all(|s| s.no_family())));
            }
            ("report subcases", to_value(&r))
        }
    };
    Ok((name.to_string(), results, ex))
}

fn n0_factorization() -> Vec<(u64, u32)> {
    let mut f = vec![(2, 6), (3, 4), (5, 3)];
    f.extend(crate::coset::SMALL_PRIMES.iter().map(|&p| (p, 2)));
    f
}

/// Rebuilds `n` from the displayed factorization and re-factors the odd-prime-free part.
fn factor_round_trip(n: &num_bigint::BigInt) -> bool {
    let f = n0_factorization();
    let rebuilt: num_bigint::BigInt = f.iter().map(|&(p, e)| num_bigint::BigInt::from(p).pow(e)).product();
    let small: u64 = f.iter().take(3).map(|&(p, e)| p.pow(e)).product();
    rebuilt == *n && factorize(small) == vec![(2, 6), (3, 4), (5, 3)]
}

/// Human-readable rendering.
pub fn render_text(r: &Report) -> String {
    let mut out = format!("# {}\n", r.command);
    render_value(&r.results, 0, &mut out);
    for e in &r.expectations {
        out.push_str(&format!("[{}] {}\n", if e.pass { "pass" } else { "FAIL" }, e.name));
    }
    out
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            // roots of unity read as amplitudes
            if let (Some(n), Some(d)) = (m.get("num").and_then(Value::as_u64), m.get("den").and_then(Value::as_u64)) {
                if m.len() == 2 {
                    out.push_str(&format!("{pad}e^(2πi·{n}/{d})  (amplitude {n}/{d} π)\n"));
                    return;
                }
            }
            for (k, x) in m {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_value(x, depth + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                }
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push_str(&format!("{pad}[{}]\n", a.iter().map(scalar).collect::<Vec<_>>().join(", ")));
        }
        Value::Array(a) => {
            for x in a {
                match x {
                    Value::Array(inner) if inner.iter().all(|y| !y.is_object() && !y.is_array()) => {
                        out.push_str(&format!("{pad}- [{}]\n", inner.iter().map(scalar).collect::<Vec<_>>().join(", ")));
                    }
                    _ => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(x, depth + 1, out);
                    }
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

/// Parses arguments given without the program name.
pub fn parse_args<I: IntoIterator<Item = String>>(args: I) -> std::result::Result<RunConfig, String> {
    RunConfig::try_parse_from(std::iter::once("lattangle".to_string()).chain(args)).map_err(|e| e.to_string())
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cfg) {
        Ok(r) => {
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string(&r).expect("report serializes")),
                Format::Text => print!("{}", render_text(&r)),
            }
            r.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("lattangle").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn constants_report() {
        let r = run(&cfg(&["constants", "--expect", "paper"])).unwrap();
        assert!(r.passed(), "{:?}", r.expectations);
        assert_eq!(r.checksums.len(), 5);
    }

    #[test]
    fn eliminant_command() {
        let r = run(&cfg(&["eliminant", "--case", "C4", "--params", "-1,1", "--roots", "3/12,1/12,10/12"])).unwrap();
        assert_eq!(r.results["isZero"], true);
        assert!(r.results["tau"].is_object());
    }

    #[test]
    fn usage_errors() {
        assert!(RunConfig::try_parse_from(["lattangle", "frobnicate"]).is_err());
        assert_eq!(main_with_args(["lattangle", "search"]), 2);
        assert!(run(&cfg(&["surface", "--roots", "1/2,1/3"])).is_err());
    }

    #[test]
    fn search_small_orders() {
        let r = run(&cfg(&["search", "case4", "--orders", "div:12", "--expect", "paper", "--jobs", "2"])).unwrap();
        assert!(r.passed(), "{:?}", r.expectations);
        let text = render_text(&r);
        assert!(text.contains("amplitude"));
    }

    #[test]
    fn verify_and_angles() {
        let tau = r#"{"order":4,"coords":["0","1"]}"#;
        let r = run(&cfg(&["verify", "--tau", tau, "--pair", "inf,0", "--musq", "1/2"])).unwrap();
        assert_eq!(r.results["holds"], true);
        let r = run(&cfg(&["angles", "--tau", tau])).unwrap();
        assert_eq!(r.results["cm"]["d"], 1);
    }
}
