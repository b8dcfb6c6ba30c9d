//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness so the
//! lines come out in order; exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use lattangle::algebra::arith::factorize;
use lattangle::algebra::{int, rat, Cyclo, Rational, RootOfUnity};
use lattangle::angles::{squared_argument, verify_angle, Slot, TauValue};
use lattangle::classify::*;
use lattangle::coset::{constants, verify_families, SMALL_PRIMES};
use lattangle::examples::*;
use lattangle::spaces::{cm_catalog, find_rational_angles, lattice_root_orders, sqrt_neg, SpaceSpec};
use lattangle::surface::*;
use lattangle::uniteq::{brute_solve, cj_bound, cj_solve, UnitRelation};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(t: Duration, limit_s: u64) -> Result<(), String> {
    ensure(t.as_secs() < limit_s, format!("took {:.1}s, limit {limit_s}s", t.as_secs_f64()))
}

/// Every coefficient vector in {±1, ±2}^k.
fn all_relations(k: usize) -> Vec<Vec<i64>> {
    const VALS: [i64; 4] = [-2, -1, 1, 2];
    (0..4usize.pow(k as u32)).map(|m| (0..k).map(|i| VALS[m / 4usize.pow(i as u32) % 4]).collect()).collect()
}

fn c1_conway_jones() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for k in 2..=5 {
        let b = cj_bound(k);
        let rels = all_relations(k);
        count += rels.len();
        let bad: Vec<Vec<i64>> = rels
            .into_par_iter()
            .filter(|c| {
                let r = UnitRelation::normalized(&c.iter().map(|&v| int(v)).collect::<Vec<_>>());
                let brute: BTreeSet<Vec<u64>> = brute_solve(&r, b)
                    .unwrap()
                    .iter()
                    .map(|s| s.assignment.values().map(|x| x.exponent_in(b)).collect())
                    .collect();
                let cj: BTreeSet<Vec<u64>> = cj_solve(&r).unwrap().iter().flat_map(|f| f.expand(k, b)).collect();
                brute != cj
            })
            .collect();
        ensure(bad.is_empty(), format!("k={k}: mismatch on {bad:?}"))?;
    }
    within(start.elapsed(), 60)?;
    Ok(format!("{count} relations, k = 2..5"))
}

fn c2_case4_div30() -> Outcome {
    let start = Instant::now();
    let orders = parse_orders("div:30").map_err(e2s)?;
    let sols = search_case4(&orders).map_err(e2s)?;
    let non_sr = sols.iter().filter(|s| s.class != Case4Class::Superrectangular).count();
    ensure(non_sr == 0, format!("{non_sr} non-superrectangular solutions"))?;
    within(start.elapsed(), 60)?;
    Ok(format!("{} solutions, all superrectangular", sols.len()))
}

fn c3_case4_div60() -> Outcome {
    let start = Instant::now();
    let orders = parse_orders("div:60").map_err(e2s)?;
    let sols = search_case4(&orders).map_err(e2s)?;
    let s = summarize_case4(&orders, &sols).map_err(e2s)?;
    let other = s.counts.get(&Case4Class::Other).copied().unwrap_or(0);
    ensure(other == 0, format!("{other} solutions neither superrectangular nor dodecagonal"))?;
    let matched: BTreeSet<_> = s.classes.iter().filter_map(|c| c.matches.clone()).collect();
    ensure(s.classes.len() == 2, format!("{} homothety classes", s.classes.len()))?;
    ensure(matched == BTreeSet::from(["tau1".to_string(), "tau2".to_string()]), format!("classes {matched:?}"))?;
    ensure(s.consistent(), "summary inconsistent")?;
    let r = dodecagonal_report().map_err(e2s)?;
    ensure(r.ok(), "argument claims not all verified")?;
    within(start.elapsed(), 300)?;
    Ok(format!("{} solutions, {} dodecagonal, 2 classes", sols.len(), s.counts.get(&Case4Class::Dodecagonal).unwrap_or(&0)))
}

fn c4_fivetuple() -> Outcome {
    let r = fivetuple_search(24).map_err(e2s)?;
    ensure(r.orders_divide_6, format!("θ0 orders {:?}", r.theta0_orders))?;
    ensure(r.theta0_orders.iter().all(|o| 6 % o == 0), "orders_divide_6 disagrees with orders")?;
    Ok(format!("{} solutions, θ0 orders {:?}", r.solutions.len(), r.theta0_orders))
}

fn c5_superrect_extra() -> Outcome {
    let r = superrect_extra_angles(30).map_err(e2s)?;
    ensure(r.unexpected == 0, format!("{} unexpected", r.unexpected))?;
    Ok(format!("{} extra angles, all order-6 or y1 = -1", r.found.len()))
}

fn c6_dodecagonal_extra() -> Outcome {
    let r = dodecagonal_extra_angles().map_err(e2s)?;
    ensure(r.len() == 2, "expected τ1 and τ2")?;
    let want = [vec![int(-1), int(0), int(1)], vec![int(0), int(1), int(3)]];
    for (d, w) in r.iter().zip(&want) {
        let mut t = d.tuple.clone();
        t.sort();
        ensure(&t == w, format!("τ{} tuple {t:?}", d.tau))?;
        ensure(d.pairs_match && d.no_fivetuple && d.verified, format!("τ{} pair set differs", d.tau))?;
    }
    Ok("{0,±1}-pairs for τ1, {0,1,3}-pairs for τ2".into())
}

fn c7_families() -> Outcome {
    let samples: Vec<(Rational, RootOfUnity)> = (0..20)
        .map(|i: i64| (rat(-(i % 7) - 1, (i % 3) + 1), RootOfUnity::of(1 + i % 2, 5 + i as u64)))
        .collect();
    let reps = verify_families(&samples).map_err(e2s)?;
    for r in &reps {
        ensure(r.symbolic_identity, format!("{}: not identically zero", r.name))?;
        ensure(r.samples == 20 && r.samples_ok == r.samples, format!("{}: {}/{} samples", r.name, r.samples_ok, r.samples))?;
    }
    Ok(format!("{} families, symbolic zero, 20 samples each", reps.len()))
}

fn c8_elliptic() -> Outcome {
    let start = Instant::now();
    ensure(j_invariant() == int(128), "j-invariant")?;
    let t = ECPoint::torsion();
    ensure(t.on_curve() && t.double().map_err(e2s)? == ECPoint::Infinity, "(-2,0) is not 2-torsion")?;
    let g = ECPoint::generator();
    ensure(g.on_curve(), "G off curve")?;
    ensure(g.double().map_err(e2s)? == ECPoint::affine(rat(-7, 4), rat(-5, 8)).map_err(e2s)?, "2G")?;
    let sweep = ec_sweep(6).map_err(e2s)?;
    let mut phis = BTreeSet::new();
    for e in sweep.iter().skip(1) {
        let r = e.report.as_ref().ok_or(format!("{}G has no valid quadruple", e.multiple))?;
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        ensure(failed.is_empty(), format!("{}G: {failed:?}", e.multiple))?;
        ensure(r.checks.iter().any(|c| c.name == "phiForms"), "φ forms not compared")?;
        phis.insert(r.phi.clone());
    }
    ensure(phis.len() == 5, "φ values repeat")?;
    within(start.elapsed(), 30)?;
    Ok(format!("2G..6G verified, variant {:?}", factor_variant().winner))
}

fn c9_genus5() -> Outcome {
    let r = genus5_verify().map_err(e2s)?;
    ensure(r.trivial_point == [true, true] && r.nontrivial_point == [true, true], "f1, f2 do not vanish")?;
    ensure(r.proportional, "pair quadratics not proportional")?;
    let [a, b, c, d] = GENUS5_POINT;
    ensure(a * b == 24 && c * d == 24, "ab = cd = 24")?;
    ensure((r.tau_abs - genus5_r()).abs() < 1e-6, format!("|τ| = {} vs r = {}", r.tau_abs, genus5_r()))?;
    ensure(r.ok(), "angle checks")?;
    Ok(format!("|τ| = {:.10}", r.tau_abs))
}

fn c10_surface() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let v: [Rational; 4] = std::array::from_fn(|_| rat(rng.gen_range(-40..=40), rng.gen_range(1..=12)));
        let (e, s) = resultant_at(v.clone());
        ensure(e == s, format!("E ≠ Sylvester at {v:?}"))?;
    }
    let triples = triples_dividing(12);
    let bad = triples.par_iter().filter(|t| !estar_check(&t[0], &t[1], &t[2]).unwrap().scaling_identity).count();
    ensure(bad == 0, format!("scaling identity fails on {bad} triples"))?;
    let m = RootOfUnity::minus_one();
    let at_minus_one = estar(&m, &m, &m).map_err(e2s)?;
    let ab_cd = lattangle::algebra::parse_poly("(a*b - c*d)^2", &lattangle::data::ABCD).map_err(e2s)?.to_cyclo();
    ensure(at_minus_one == ab_cd, "E*(-1,-1,-1) ≠ (ab - cd)²")?;
    let disagree = triples
        .par_iter()
        .filter(|t| t.iter().all(|r| !r.is_one()))
        .filter(|t| !defined_over_q(&t[0], &t[1], &t[2]).unwrap().agree())
        .count();
    ensure(disagree == 0, format!("defined_over_q routes disagree on {disagree} triples"))?;
    Ok(format!("{} triples of order dividing 12", triples.len()))
}

fn c11_cm() -> Outcome {
    let close = |s: BTreeSet<RootOfUnity>| -> BTreeSet<RootOfUnity> { s.iter().flat_map(|r| [*r, r.inv()]).collect() };
    for d in [1u64, 2, 3, 5] {
        let cat = cm_catalog(d).map_err(e2s)?;
        let from_catalog: BTreeSet<RootOfUnity> = cat
            .catalog
            .iter()
            .map(|l| squared_argument(&Cyclo::one(), l).ok_or(format!("d={d}: catalog entry without rational angle")))
            .collect::<Result<_, _>>()?;
        let s = find_rational_angles(&SpaceSpec::explicit(sqrt_neg(d).map_err(e2s)?, "acceptance"), None).map_err(e2s)?;
        ensure(s.cm.as_ref().map(|c| c.d) == Some(d), format!("d={d}: CM discriminant"))?;
        let found: BTreeSet<RootOfUnity> = s.cm_infinite.iter().copied().collect();
        ensure(close(from_catalog) == close(found), format!("d={d}: catalog and search disagree"))?;
        // every catalog angle also verifies exactly
        for l in &cat.catalog {
            let mu = squared_argument(&Cyclo::one(), l).unwrap();
            let tv = TauValue::Explicit(l.clone());
            ensure(verify_angle(&tv, &Slot::Infinity, &Slot::Finite(int(0)), &mu).map_err(e2s)?, "catalog angle")?;
        }
    }
    let m = lattice_root_orders().map_err(e2s)?;
    ensure(m["gaussian"] == 8 && m["eisenstein"] == 12, format!("{m:?}"))?;
    Ok("d = 1, 2, 3, 5; bounds 8 and 12".into())
}

fn c12_constants() -> Outcome {
    let c = constants();
    let mut f = vec![(2u64, 6u32), (3, 4), (5, 3)];
    f.extend(SMALL_PRIMES.iter().map(|&p| (p, 2)));
    let rebuilt: BigInt = f.iter().map(|&(p, e)| BigInt::from(p).pow(e)).product();
    ensure(rebuilt == c.n0, "N0 ≠ displayed factorization")?;
    ensure(c.thm_bound == &c.n0 * 2, "bound ≠ 2·N0")?;
    // trial division of N0 by the listed primes leaves 1 and recovers the exponents
    let mut rest = c.n0.clone();
    for &(p, e) in &f {
        let mut k = 0;
        while (&rest % p) == BigInt::from(0) {
            rest /= p;
            k += 1;
        }
        ensure(k == e, format!("exponent of {p} is {k}"))?;
    }
    ensure(rest == BigInt::from(1), "N0 has other prime factors")?;
    ensure(f.iter().all(|&(p, _)| factorize(p) == vec![(p, 1)]), "listed factor not prime")?;
    ensure(c.n0.to_string() == "39648495215104846368289992000", "N0 digits")?;
    ensure(c.thm_bound.to_string() == "79296990430209692736579984000", "bound digits")?;
    Ok(format!("N0 = {}", c.n0))
}

fn results_body(args: &[&str], jobs: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lattangle"))
        .args(args)
        .args(["--jobs", jobs])
        .output()
        .map_err(e2s)?;
    ensure(out.status.success(), format!("{args:?} exited with {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(e2s)?;
    Ok(serde_json::to_string(&v["results"]).unwrap())
}

fn c13_determinism() -> Outcome {
    let commands: [&[&str]; 6] = [
        &["search", "case4", "--orders", "div:60"],
        &["report", "fivetuple"],
        &["report", "extra-angles"],
        &["report", "dodecagonal-angles"],
        &["report", "subcases"],
        &["ec", "--multiples", "6", "--verify"],
    ];
    for c in commands {
        let bodies = ["1", "4", "1", "4"].iter().map(|j| results_body(c, j)).collect::<Result<Vec<_>, _>>()?;
        ensure(bodies.iter().all(|b| b == &bodies[0]), format!("{c:?} differs across runs"))?;
    }
    Ok(format!("{} commands, --jobs 1 and 4, two runs each", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("conway-jones consistency", c1_conway_jones),
        ("case-4 search, orders dividing 30", c2_case4_div30),
        ("case-4 search, orders dividing 60", c3_case4_div60),
        ("5-tuple obstruction", c4_fivetuple),
        ("superrectangular extra angles", c5_superrect_extra),
        ("dodecagonal extra angles", c6_dodecagonal_extra),
        ("family identities", c7_families),
        ("elliptic example", c8_elliptic),
        ("genus-5 example", c9_genus5),
        ("surface identities", c10_surface),
        ("cm catalogs", c11_cm),
        ("constants", c12_constants),
        ("determinism", c13_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {:>2} {name} ({t:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
