//! Bounded-order searches behind the classification of spaces with a rational
//! 4-tuple: the four-tuple equation, the two dodecagonal spaces, 5-tuples and
//! extra angles in superrectangular and dodecagonal spaces, and the scripted
//! checks of the triple-plus-pair sub-cases.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::arith::{divisors, gcd, lcm};
use crate::algebra::cyclo::root_table;
use crate::algebra::linalg::{coordinate_rows, solve_affine, Matrix};
use crate::algebra::{int, parse_poly, rat, rational_ratio, Cyclo, MPoly, RatioOutcome, Rational, RootOfUnity};
use crate::angles::{tau_from_tuple, tau_recover, verify_angle, AngleConfig, CaseId, Slot, TauValue};
use crate::coset::coset_family_test;
use crate::data::C32_VARS;
use crate::error::{Error, Result};
use crate::ser;
use crate::spaces::homothetic;
use crate::uniteq::{brute_solve, monomial_linear_solve, specialize, MonomialEquation, Term, UnitRelation};

/// Largest common order accepted by [`search_case4`].
pub const MAX_SEARCH_ORDER: u64 = 120;

/// Parses `a..b` (inclusive), `div:n`, or a comma-separated list of orders.
pub fn parse_orders(spec: &str) -> Result<Vec<u64>> {
    let s = spec.trim();
    let bad = || Error::Parse(format!("order set `{s}`: expected `a..b`, `div:n` or `n1,n2,...`"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let mut out: Vec<u64> = if let Some(n) = s.strip_prefix("div:") {
        divisors(num(n)?)
    } else if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    out.sort_unstable();
    out.dedup();
    if out.is_empty() || out[0] == 0 {
        return Err(bad());
    }
    if let Some(n) = out.iter().find(|&&n| n > MAX_SEARCH_ORDER) {
        return Err(Error::Precondition(format!("order {n} exceeds {MAX_SEARCH_ORDER}")));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Case4Class {
    Superrectangular,
    Dodecagonal,
    Other,
}

/// A solution of `a1 (x1 - 1)(x0 - x2) = a2 (x2 - 1)(x0 - x1)`, normalized to `a2 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Case4Solution {
    /// Exact common order of the three roots.
    pub order: u64,
    pub roots: [RootOfUnity; 3],
    #[serde(serialize_with = "ser::rat")]
    pub ratio: Rational,
    pub class: Case4Class,
}

impl Case4Solution {
    /// The 4-tuple `(1, τ, τ + ratio, τ + 1)`.
    pub fn config(&self) -> AngleConfig {
        AngleConfig::unchecked(CaseId::C4, vec![self.ratio.clone(), Rational::one()], self.roots)
    }

    pub fn tau(&self) -> Result<Cyclo> {
        tau_from_tuple(&self.ratio, &self.roots[0], &self.roots[1])
    }
}

/// Some root or ratio of two roots equals -1.
pub fn superrectangular_roots(r: &[RootOfUnity; 3]) -> bool {
    let m = RootOfUnity::minus_one();
    r.contains(&m) || (0..3).any(|i| (0..3).any(|j| i != j && r[i].div(&r[j]) == m))
}

/// The dodecagonal generators `τ1 = -ζ³+ζ²+ζ-1` and `τ2 = ζ³-ζ²+ζ-1`, `ζ = ζ12`.
pub fn dodecagonal_tau(j: usize) -> Cyclo {
    let s = if j == 1 { -1 } else { 1 };
    Cyclo::from_exponents(12, &[(3, int(s)), (2, int(-s)), (1, int(1)), (0, int(-1))])
}

/// The 4-tuples `(1, τ1, τ1 + 1, τ1 - 1)` and `(1, τ2, τ2 + 1, τ2 + 3)`.
pub fn dodecagonal_config(j: usize) -> AngleConfig {
    let r = |k| RootOfUnity::of(k, 12);
    if j == 1 {
        AngleConfig::unchecked(CaseId::C4, vec![int(1), int(-1)], [r(3), r(1), r(10)])
    } else {
        AngleConfig::unchecked(CaseId::C4, vec![int(1), int(3)], [r(9), r(4), r(1)])
    }
}

fn classify_solution(roots: &[RootOfUnity; 3], ratio: &Rational, refs: &[Cyclo; 2]) -> Result<Case4Class> {
    if superrectangular_roots(roots) {
        return Ok(Case4Class::Superrectangular);
    }
    let tau = tau_from_tuple(ratio, &roots[0], &roots[1])?;
    for r in refs {
        if homothetic(&tau, r)? {
            return Ok(Case4Class::Dodecagonal);
        }
    }
    Ok(Case4Class::Other)
}

/// `Σ sign · ζ^e` as integer coordinates.
fn combo(table: &[Vec<i64>], n: usize, terms: [(usize, i64); 4]) -> Vec<i64> {
    let mut v = vec![0i64; table[0].len()];
    for (e, s) in terms {
        for (a, b) in v.iter_mut().zip(&table[e % n]) {
            *a += s * b;
        }
    }
    v
}

/// `w / u` when it is rational (`u ≠ 0`).
fn int_ratio(w: &[i64], u: &[i64]) -> Option<Rational> {
    let p = u.iter().position(|&c| c != 0)?;
    let ok = w.iter().zip(u).all(|(&wi, &ui)| wi as i128 * u[p] as i128 == ui as i128 * w[p] as i128);
    ok.then(|| rat(w[p], u[p]))
}

fn search_order(n: u64, refs: &[Cyclo; 2]) -> Result<Vec<Case4Solution>> {
    let table = root_table(n);
    let m = n as usize;
    let shards: Vec<Result<Vec<Case4Solution>>> = (1..m)
        .into_par_iter()
        .map(|i| {
            let mut out = vec![];
            for j in (1..m).filter(|&j| j != i) {
                for k in (1..m).filter(|&k| k != i && k != j) {
                    if gcd(gcd(gcd(i as u64, j as u64), k as u64), n) != 1 {
                        continue;
                    }
                    // U = (x1 - 1)(x0 - x2), W = (x2 - 1)(x0 - x1)
                    let u = combo(&table, m, [(i + j, 1), (j + k, -1), (i, -1), (k, 1)]);
                    let w = combo(&table, m, [(k + i, 1), (k + j, -1), (i, -1), (j, 1)]);
                    let Some(ratio) = int_ratio(&w, &u) else { continue };
                    if ratio.is_one() {
                        continue;
                    }
                    let roots = [i, j, k].map(|e| RootOfUnity::of(e as i64, n));
                    let class = classify_solution(&roots, &ratio, refs)?;
                    out.push(Case4Solution { order: n, roots, ratio, class });
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = vec![];
    for s in shards {
        out.extend(s?);
    }
    Ok(out)
}

/// Every solution whose roots have exact common order in `orders`, in a fixed order.
pub fn search_case4(orders: &[u64]) -> Result<Vec<Case4Solution>> {
    if let Some(n) = orders.iter().find(|&&n| n == 0 || n > MAX_SEARCH_ORDER) {
        return Err(Error::Precondition(format!("order {n} outside 1..={MAX_SEARCH_ORDER}")));
    }
    let refs = [dodecagonal_tau(1), dodecagonal_tau(2)];
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();
    let mut out = vec![];
    for n in orders {
        out.extend(search_order(n, &refs)?);
    }
    Ok(out)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = vec![];
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

/// The same four lines listed in every order, renormalized to `(1, τ', τ' + r', τ' + 1)`.
pub fn relabellings(roots: &[RootOfUnity; 3], ratio: &Rational) -> Vec<([RootOfUnity; 3], Rational)> {
    let (o, z) = (Rational::one(), Rational::zero());
    // lines p + q τ and their squared directions
    let vecs = [(o.clone(), z.clone()), (z, o.clone()), (ratio.clone(), o.clone()), (o.clone(), o)];
    let dirs = [RootOfUnity::one(), roots[0], roots[1], roots[2]];
    permutations4()
        .into_iter()
        .map(|p| {
            let (p0, q0) = &vecs[p[0]];
            let (p1, q1) = &vecs[p[1]];
            let det = p0 * q1 - p1 * q0;
            // w_k = α w_0 + β w_1, i.e. w_k ∝ τ' + α/β
            let shift = |k: usize| {
                let (pk, qk) = &vecs[p[k]];
                let alpha = (pk * q1 - p1 * qk) / &det;
                let beta = (p0 * qk - pk * q0) / &det;
                alpha / beta
            };
            let d0 = dirs[p[0]];
            ([dirs[p[1]].div(&d0), dirs[p[2]].div(&d0), dirs[p[3]].div(&d0)], shift(2) / shift(3))
        })
        .collect()
}

type Key = (u64, [u64; 3], Rational);

fn key(order: u64, roots: &[RootOfUnity; 3], ratio: &Rational) -> Key {
    (order, roots.map(|r| r.exponent_in(order)), ratio.clone())
}

fn orbit(s: &Case4Solution) -> BTreeSet<Key> {
    let n = s.order;
    let units: Vec<i64> = (1..=n).filter(|&u| gcd(u, n) == 1).map(|u| u as i64).collect();
    let mut out = BTreeSet::new();
    for (roots, ratio) in relabellings(&s.roots, &s.ratio) {
        for &u in &units {
            out.insert(key(n, &roots.map(|r| r.pow(u)), &ratio));
        }
    }
    out
}

/// One orbit under relabelling of the tuple and the Galois group (conjugation included).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Case4Orbit {
    /// Lexicographically least member.
    pub representative: Case4Solution,
    pub size: usize,
}

pub fn orbit_reduce(sols: &[Case4Solution]) -> Vec<Case4Orbit> {
    let mut seen: HashSet<Key> = HashSet::new();
    let mut out = vec![];
    for s in sols {
        if seen.contains(&key(s.order, &s.roots, &s.ratio)) {
            continue;
        }
        let orb = orbit(s);
        let (order, exps, ratio) = orb.iter().next().unwrap().clone();
        out.push(Case4Orbit {
            representative: Case4Solution { order, roots: exps.map(|e| RootOfUnity::of(e as i64, order)), ratio, class: s.class },
            size: orb.len(),
        });
        seen.extend(orb);
    }
    out.sort_by(|a, b| {
        let ka = key(a.representative.order, &a.representative.roots, &a.representative.ratio);
        ka.cmp(&key(b.representative.order, &b.representative.roots, &b.representative.ratio))
    });
    out
}

/// Non-superrectangular orbits grouped by homothety of their spaces.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomothetyClass {
    pub class: Case4Class,
    pub representative: Case4Solution,
    pub orbits: usize,
    /// `"tau1"` or `"tau2"` when homothetic to a dodecagonal generator.
    pub matches: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Case4Summary {
    pub orders: Vec<u64>,
    pub solutions: usize,
    pub counts: BTreeMap<Case4Class, usize>,
    pub orbits: usize,
    pub classes: Vec<HomothetyClass>,
}

impl Case4Summary {
    /// Only superrectangular and dodecagonal solutions, and the dodecagonal ones form
    /// exactly the classes of τ1 and τ2 (both present once order 12 is searched).
    pub fn consistent(&self) -> bool {
        let other = self.counts.get(&Case4Class::Other).copied().unwrap_or(0);
        let matched: Vec<_> = self.classes.iter().map(|c| c.matches.as_deref()).collect();
        let expect_both = self.orders.contains(&12);
        let dodec_ok = if expect_both {
            matched == [Some("tau1"), Some("tau2")] || matched == [Some("tau2"), Some("tau1")]
        } else {
            matched.iter().all(|m| m.is_some())
        };
        other == 0 && dodec_ok
    }
}

pub fn summarize_case4(orders: &[u64], sols: &[Case4Solution]) -> Result<Case4Summary> {
    let mut counts = BTreeMap::new();
    for s in sols {
        *counts.entry(s.class).or_insert(0) += 1;
    }
    let orbits = orbit_reduce(sols);
    let refs = [dodecagonal_tau(1), dodecagonal_tau(2)];
    let mut classes: Vec<(Cyclo, HomothetyClass)> = vec![];
    for o in orbits.iter().filter(|o| o.representative.class != Case4Class::Superrectangular) {
        let tau = o.representative.tau()?;
        let mut found = false;
        for (t, c) in classes.iter_mut() {
            if homothetic(&tau, t)? || homothetic(&tau, &t.conj())? {
                c.orbits += 1;
                found = true;
                break;
            }
        }
        if !found {
            let mut matches = None;
            for (j, r) in refs.iter().enumerate() {
                if homothetic(&tau, r)? || homothetic(&tau.conj(), r)? {
                    matches = Some(format!("tau{}", j + 1));
                }
            }
            let c = HomothetyClass { class: o.representative.class, representative: o.representative.clone(), orbits: 1, matches };
            classes.push((tau, c));
        }
    }
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();
    Ok(Case4Summary {
        orders,
        solutions: sols.len(),
        counts,
        orbits: orbits.len(),
        classes: classes.into_iter().map(|(_, c)| c).collect(),
    })
}

// ---------------------------------------------------------------------------
// dodecagonal spaces

fn sqrt3() -> Cyclo {
    &Cyclo::zeta(12) + &Cyclo::zeta_pow(12, 11)
}

/// The basis `(1, √3, i, i√3)` of ℚ(ζ12).
fn quad_basis() -> [Cyclo; 4] {
    let (s, i) = (sqrt3(), Cyclo::zeta(4));
    let is = &i * &s;
    [Cyclo::one(), s, i, is]
}

/// Coordinates in the basis `(1, √3, i, i√3)`.
pub fn quad_coords(v: &Cyclo) -> Result<[Rational; 4]> {
    if 12 % v.order() != 0 {
        return Err(Error::Invalid("element outside Q(zeta_12)".into()));
    }
    let mut elems = quad_basis().to_vec();
    elems.push(v.clone());
    let (_, rows) = coordinate_rows(&elems)?;
    let a: Matrix = (0..rows[0].len()).map(|r| (0..4).map(|c| rows[c][r].clone()).collect()).collect();
    let (x, _) = solve_affine(&a, &rows[4]).ok_or_else(|| Error::Invalid("not in the span".into()))?;
    Ok([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()])
}

fn from_quad(c: &[Rational; 4]) -> Cyclo {
    quad_basis().iter().zip(c).fold(Cyclo::zero(), |acc, (b, k)| &acc + &b.scale(k))
}

fn det(mut m: Matrix) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    d
}

/// `det(1, v1, v2, v1 v2)` in the basis `(1, √3, i, i√3)`.
fn quad_det(v1: &Cyclo, v2: &Cyclo) -> Result<Rational> {
    let cols = [Cyclo::one(), v1.clone(), v2.clone(), v1 * v2].iter().map(quad_coords).collect::<Result<Vec<_>>>()?;
    Ok(det((0..4).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()))
}

/// The determinant as a polynomial in the coordinates `p_k` of `v1` and `q_k` of `v2`,
/// with the product taken from the multiplication table of the basis.
fn symbolic_quad_det() -> Result<MPoly<Rational>> {
    const VARS: [&str; 8] = ["p0", "p1", "p2", "p3", "q0", "q1", "q2", "q3"];
    let basis = quad_basis();
    let v = |name: &str| MPoly::var(&VARS, name);
    let p: Vec<MPoly<Rational>> = (0..4).map(|k| v(VARS[k])).collect::<Result<_>>()?;
    let q: Vec<MPoly<Rational>> = (0..4).map(|k| v(VARS[4 + k])).collect::<Result<_>>()?;
    let mut prod = vec![MPoly::zero(&VARS); 4];
    for i in 0..4 {
        for j in 0..4 {
            let c = quad_coords(&(&basis[i] * &basis[j]))?;
            let pq = p[i].mul(&q[j]);
            for k in 0..4 {
                if !c[k].is_zero() {
                    prod[k] = prod[k].add(&pq.scale(&c[k]));
                }
            }
        }
    }
    // first column is (1, 0, 0, 0): expand along it
    let m = |r: usize| [p[r].clone(), q[r].clone(), prod[r].clone()];
    let (a, b, c) = (m(1), m(2), m(3));
    let minor = |x: &MPoly<Rational>, y: &MPoly<Rational>, z: &MPoly<Rational>, w: &MPoly<Rational>| x.mul(w).sub(&y.mul(z));
    Ok(a[0].mul(&minor(&b[1], &b[2], &c[1], &c[2])).sub(&a[1].mul(&minor(&b[0], &b[2], &c[0], &c[2]))).add(&a[2].mul(&minor(&b[0], &b[1], &c[0], &c[1]))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ArgumentClaim {
    pub tau: usize,
    #[serde(serialize_with = "ser::rat")]
    pub offset: Rational,
    /// The claimed argument of `τ + offset`, as a multiple of π.
    #[serde(serialize_with = "ser::rat")]
    pub arg_over_pi: Rational,
    pub holds: bool,
}

/// A product-of-radicals expression for `τ_j + offset`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RadicalForm {
    pub tau: usize,
    #[serde(serialize_with = "ser::rat")]
    pub offset: Rational,
    pub exact: bool,
    /// Equal to `-(τ_j + offset)` instead; the argument claim is checked separately.
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SignPattern {
    pub tau: usize,
    /// Signs applied to the `√3`, `i`, `i√3` coordinates.
    pub signs: [i8; 3],
    pub automorphism: bool,
    pub determinant_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DodecagonalReport {
    /// `tau_recover` of each 4-tuple equals the closed form.
    pub recovered: [bool; 2],
    pub radical_forms: Vec<RadicalForm>,
    pub arguments: Vec<ArgumentClaim>,
    /// Rank over ℚ of `(1, τ1, τ2, τ1 τ2)`.
    pub rank: usize,
    /// Every automorphism of ℚ(ζ12) maps each space to a homothetic one.
    pub galois_stable: [bool; 2],
    pub sign_patterns: Vec<SignPattern>,
    /// The symbolic determinant involves only squares of the non-constant coordinates.
    pub determinant_even: bool,
}

impl DodecagonalReport {
    pub fn ok(&self) -> bool {
        self.recovered.iter().all(|&b| b)
            && self.radical_forms.iter().all(|r| r.exact || r.negated)
            && self.arguments.iter().all(|a| a.holds)
            && self.rank == 4
            && self.galois_stable.iter().all(|&b| b)
            && self.sign_patterns.iter().all(|s| s.determinant_zero)
            && self.determinant_even
    }
}

fn radical_forms(j: usize) -> Vec<(Rational, Cyclo)> {
    let (s, i) = (sqrt3(), Cyclo::zeta(4));
    let one = Cyclo::one();
    let half = rat(1, 2);
    if j == 1 {
        vec![
            (int(0), (&(&i + &one) * &(&s - &one)).scale(&half)),
            (int(1), (&(&i + &one) * &(&s - &i)).scale(&half)),
            (int(-1), (&(&i - &s) * &(&s - &one)).scale(&half)),
        ]
    } else {
        let is = &i * &s;
        vec![
            (int(0), (&(&i - &one) * &(&Cyclo::from_int(3) - &s)).scale(&half)),
            (int(1), (&(&one + &is) * &(&s - &one)).scale(&half)),
            (int(3), (&(&s * &(&i - &one)) * &(&one + &is)).scale(&half)),
        ]
    }
}

pub fn dodecagonal_report() -> Result<DodecagonalReport> {
    let taus = [dodecagonal_tau(1), dodecagonal_tau(2)];
    let mut recovered = [false; 2];
    let mut radical = vec![];
    let mut galois_stable = [false; 2];
    for j in 0..2 {
        recovered[j] = tau_recover(&dodecagonal_config(j + 1))?.tau == taus[j];
        for (b, v) in radical_forms(j + 1) {
            let t = &taus[j] + &Cyclo::from_rational(&b);
            radical.push(RadicalForm { tau: j + 1, offset: b, exact: t == v, negated: t == -v });
        }
        let mut all = true;
        for u in [1, 5, 7, 11] {
            all &= homothetic(&taus[j], &taus[j].galois(u)?)?;
        }
        galois_stable[j] = all;
    }
    let claims = [(1, int(0), rat(1, 4)), (1, int(1), rat(1, 12)), (1, int(-1), rat(5, 6)), (2, int(0), rat(3, 4)), (2, int(1), rat(1, 3)), (2, int(3), rat(1, 12))];
    let mut arguments = vec![];
    for (j, b, a) in claims {
        let v = &taus[j - 1] + &Cyclo::from_rational(&b);
        // e^{-iα} with α = aπ is the root of unity -a/2 of a turn
        let k: i64 = (-a.numer()).try_into().unwrap();
        let d: u64 = (a.denom() * 2u32).try_into().unwrap();
        let w = &v * &RootOfUnity::of(k, d).to_cyclo();
        let holds = w.is_real() && w.real_sign() == std::cmp::Ordering::Greater;
        arguments.push(ArgumentClaim { tau: j, offset: b, arg_over_pi: a, holds });
    }
    let rank = {
        let rows = [Cyclo::one(), taus[0].clone(), taus[1].clone(), &taus[0] * &taus[1]]
            .iter()
            .map(|v| quad_coords(v).map(|c| c.to_vec()))
            .collect::<Result<Matrix>>()?;
        crate::algebra::linalg::rank(&rows)
    };
    let mut sign_patterns = vec![];
    for (j, t) in taus.iter().enumerate() {
        let c = quad_coords(t)?;
        for mask in 0..8u8 {
            let signs = [0, 1, 2].map(|b| if mask >> b & 1 == 1 { -1i8 } else { 1 });
            let mut f = c.clone();
            for k in 0..3 {
                f[k + 1] *= int(signs[k] as i64);
            }
            let d = quad_det(t, &from_quad(&f))?;
            sign_patterns.push(SignPattern {
                tau: j + 1,
                signs,
                automorphism: signs.iter().map(|&s| s as i64).product::<i64>() == 1,
                determinant_zero: d.is_zero(),
            });
        }
    }
    let sym = symbolic_quad_det()?;
    let determinant_even = !sym.is_zero() && sym.terms().all(|(e, _)| e[0] == 0 && e[4] == 0 && e.iter().all(|k| k % 2 == 0));
    Ok(DodecagonalReport {
        recovered,
        radical_forms: radical,
        arguments,
        rank,
        galois_stable,
        sign_patterns,
        determinant_even,
    })
}

// ---------------------------------------------------------------------------
// 5-tuples in superrectangular spaces

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FiveTuple {
    pub theta0: RootOfUnity,
    pub x3: RootOfUnity,
    #[serde(serialize_with = "ser::rat")]
    pub a3: Rational,
    /// `τ + a3` makes the angle `x3` with 1 in `⟨1, θ0⟩`.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FiveTupleReport {
    pub bound: u64,
    pub solutions: Vec<FiveTuple>,
    pub theta0_orders: Vec<u64>,
    pub orders_divide_6: bool,
}

/// Solutions of `θ0 - x3/θ0 - a3 x3 + a3 = 0` with `θ0` non-real, `x3 ≠ 1`,
/// `a3 ∉ {0, ±1}` rational, for every common order up to `bound`.
pub fn fivetuple_search(bound: u64) -> Result<FiveTupleReport> {
    if bound == 0 || bound > 60 {
        return Err(Error::Precondition("bound must lie in 1..=60".into()));
    }
    let mut solutions = vec![];
    for n in 3..=bound {
        for i in 1..n {
            let th = RootOfUnity::of(i as i64, n);
            if th.order() <= 2 {
                continue;
            }
            for k in 1..n {
                if gcd(gcd(i, k), n) != 1 {
                    continue;
                }
                let x3 = RootOfUnity::of(k as i64, n);
                let num = &th.to_cyclo() - &x3.div(&th).to_cyclo();
                let den = &x3.to_cyclo() - &Cyclo::one();
                let RatioOutcome::Ratio(a3) = rational_ratio(&num, &den) else { continue };
                if a3.is_zero() || a3 == int(1) || a3 == int(-1) {
                    continue;
                }
                let verified = verify_angle(&TauValue::Explicit(th.to_cyclo()), &Slot::Infinity, &Slot::Finite(a3.clone()), &x3)?;
                solutions.push(FiveTuple { theta0: th, x3, a3, verified });
            }
        }
    }
    let theta0_orders: Vec<u64> = solutions.iter().map(|s| s.theta0.order()).collect::<BTreeSet<_>>().into_iter().collect();
    let orders_divide_6 = theta0_orders.iter().all(|o| 6 % o == 0);
    Ok(FiveTupleReport { bound, solutions, theta0_orders, orders_divide_6 })
}

// ---------------------------------------------------------------------------
// extra angles

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraKind {
    /// Common order divides 6: the space is ℚ(√-3).
    Eisenstein,
    /// Common order divides 4: the space is ℚ(i).
    Gaussian,
    /// `y1 = -1`, which forces a CM space.
    CmDegeneration,
    Unexpected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtraAngle {
    pub theta0: RootOfUnity,
    pub y1: RootOfUnity,
    #[serde(serialize_with = "ser::opt_rat")]
    pub b0: Option<Rational>,
    #[serde(serialize_with = "ser::opt_rat")]
    pub b1: Option<Rational>,
    /// Description of a positive-dimensional solution set.
    pub family: Option<String>,
    pub kind: ExtraKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtraAngleReport {
    pub d: u64,
    pub found: Vec<ExtraAngle>,
    pub unexpected: usize,
}

fn extra_kind(theta0: &RootOfUnity, y1: &RootOfUnity) -> ExtraKind {
    let n = lcm(theta0.order(), y1.order());
    if *y1 == RootOfUnity::minus_one() {
        ExtraKind::CmDegeneration
    } else if 6 % n == 0 {
        ExtraKind::Eisenstein
    } else if 4 % n == 0 {
        ExtraKind::Gaussian
    } else {
        ExtraKind::Unexpected
    }
}

fn generic_pair(b0: &Rational, b1: &Rational) -> bool {
    let bad = |b: &Rational| b.is_zero() || *b == int(1) || *b == int(-1);
    b0 != b1 && !bad(b0) && !bad(b1)
}

/// Angles `(θ0 + b0, θ0 + b1)` in `⟨1, θ0⟩` with squared amplitude `y1`, outside the 4-tuple,
/// for `θ0`, `y1` of order dividing `d`.
pub fn superrect_extra_angles(d: u64) -> Result<ExtraAngleReport> {
    if d == 0 || d > 60 {
        return Err(Error::Precondition("d must lie in 1..=60".into()));
    }
    let roots = RootOfUnity::all_of_order_dividing(d);
    let mut found = vec![];
    for th in roots.iter().filter(|r| r.order() > 2) {
        let t = th.to_cyclo();
        let ti = th.inv().to_cyclo();
        for y in roots.iter().filter(|r| !r.is_one()) {
            let yc = y.to_cyclo();
            let eq = MonomialEquation {
                c1: &Cyclo::one() - &yc,
                cu: &t - &(&yc * &ti),
                cv: Some(&ti - &(&t * &yc)),
                cuv: Some(&Cyclo::one() - &yc),
            };
            let sols = monomial_linear_solve(&eq)?;
            let kind = extra_kind(th, y);
            if let Some(desc) = sols.infinite {
                found.push(ExtraAngle { theta0: *th, y1: *y, b0: None, b1: None, family: Some(desc), kind });
            }
            for p in sols.points {
                let v = p.v.expect("two unknowns");
                if generic_pair(&p.u, &v) {
                    found.push(ExtraAngle { theta0: *th, y1: *y, b0: Some(p.u), b1: Some(v), family: None, kind });
                }
            }
        }
    }
    let unexpected = found.iter().filter(|f| f.kind == ExtraKind::Unexpected).count();
    Ok(ExtraAngleReport { d, found, unexpected })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairHit {
    pub y: RootOfUnity,
    #[serde(serialize_with = "ser::rat")]
    pub b0: Rational,
    #[serde(serialize_with = "ser::rat")]
    pub b1: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OneHit {
    pub y: RootOfUnity,
    #[serde(serialize_with = "ser::rat")]
    pub b: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DodecagonalAngles {
    pub tau: usize,
    /// The shifts `0, a1, a2` of the defining 4-tuple.
    #[serde(serialize_with = "ser::rats")]
    pub tuple: Vec<Rational>,
    pub pairs: Vec<PairHit>,
    /// Angles between 1 and `τ + b`.
    pub with_one: Vec<OneHit>,
    pub infinite: Vec<RootOfUnity>,
    /// The unordered pairs found are exactly the pairs of the tuple.
    pub pairs_match: bool,
    /// Every `b` making a rational angle with 1 is already in the tuple.
    pub no_fivetuple: bool,
    /// Each hit passes `verify_angle`.
    pub verified: bool,
}

/// Every rational angle of `⟨1, τj⟩`, `j = 1, 2`, over `y = ζ12^k`.
pub fn dodecagonal_extra_angles() -> Result<Vec<DodecagonalAngles>> {
    let mut out = vec![];
    for j in 1..=2 {
        let tau = dodecagonal_tau(j);
        let tb = tau.conj();
        let cfg = dodecagonal_config(j);
        let tuple = vec![int(0), cfg.params[0].clone(), cfg.params[1].clone()];
        let tv = TauValue::Explicit(tau.clone());
        let (mut pairs, mut with_one, mut infinite) = (vec![], vec![], vec![]);
        let mut verified = true;
        for k in 1..12 {
            let y = RootOfUnity::of(k, 12);
            let yc = y.to_cyclo();
            let eq = MonomialEquation {
                c1: &(&yc - &Cyclo::one()) * &(&tau * &tb),
                cu: &(&yc * &tb) - &tau,
                cv: Some(&(&yc * &tau) - &tb),
                cuv: Some(&yc - &Cyclo::one()),
            };
            let sols = monomial_linear_solve(&eq)?;
            if sols.infinite.is_some() {
                infinite.push(y);
            }
            for p in sols.points {
                let b1 = p.v.expect("two unknowns");
                if p.u == b1 {
                    continue;
                }
                verified &= verify_angle(&tv, &Slot::Finite(p.u.clone()), &Slot::Finite(b1.clone()), &y)?;
                pairs.push(PairHit { y, b0: p.u, b1 });
            }
            // b (y - 1) = τ - y τ̄
            let one = monomial_linear_solve(&MonomialEquation { c1: &(&yc * &tb) - &tau, cu: &yc - &Cyclo::one(), cv: None, cuv: None })?;
            if one.infinite.is_some() {
                infinite.push(y);
            }
            for p in one.points {
                verified &= verify_angle(&tv, &Slot::Infinity, &Slot::Finite(p.u.clone()), &y)?;
                with_one.push(OneHit { y, b: p.u });
            }
        }
        let found: BTreeSet<(Rational, Rational)> =
            pairs.iter().map(|p| if p.b0 < p.b1 { (p.b0.clone(), p.b1.clone()) } else { (p.b1.clone(), p.b0.clone()) }).collect();
        let mut expected = BTreeSet::new();
        for a in 0..3 {
            for b in a + 1..3 {
                let (x, y) = (tuple[a].clone(), tuple[b].clone());
                expected.insert(if x < y { (x, y) } else { (y, x) });
            }
        }
        let no_fivetuple = infinite.is_empty() && with_one.iter().all(|h| tuple.contains(&h.b));
        out.push(DodecagonalAngles { tau: j, tuple, pairs, with_one, infinite, pairs_match: found == expected, no_fivetuple, verified });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// triple-plus-pair sub-cases

/// One sub-case of a one-parameter family `(x t^m, y t^p, z t^q)` for the triple-plus-pair
/// polynomial: the unit equation that must vanish, and the exponent vector.
struct Subcase {
    label: &'static str,
    w: [i64; 3],
    /// The leading part in `t` equals `factor · equation`, when given.
    factor: Option<&'static str>,
    equation: &'static str,
    /// Root variable normalized to 1 by reparametrizing `t`.
    fixed: Option<&'static str>,
    /// Whether surviving solutions are checked for identical vanishing in `t`.
    family_test: bool,
}

const SUBCASES: [Subcase; 3] = [
    Subcase {
        label: "m=p=1, q=0",
        w: [1, 1, 0],
        factor: Some("a x y"),
        equation: "c x z - b x + (a - c) y z + (b - a) y",
        fixed: Some("x"),
        family_test: true,
    },
    Subcase {
        label: "m=1, p=q=0",
        w: [1, 0, 0],
        factor: Some("x^2"),
        equation: "b (a - c) - a b y - c (a - b) z + a c y z",
        fixed: Some("x"),
        family_test: true,
    },
    Subcase {
        label: "m=p=0, q=1",
        w: [0, 0, 1],
        factor: None,
        equation: "-a + c x + (c - a) y",
        fixed: None,
        family_test: false,
    },
];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubcaseMember {
    pub roots: [RootOfUnity; 3],
    /// `(a, b, c)` with `c = 1`; `b` is absent when the equation does not involve it.
    #[serde(serialize_with = "ser::rats")]
    pub params: Vec<Rational>,
    pub identically_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubcaseResult {
    pub label: &'static str,
    pub w: [i64; 3],
    pub equation: &'static str,
    /// The leading coefficient in `t` recomputed from the polynomial matches the equation.
    pub leading_matches: Option<bool>,
    pub bound: u64,
    /// Non-degenerate solutions, up to the reparametrization of `t`.
    pub members: Vec<SubcaseMember>,
    /// Positive-dimensional parameter sets; sampled points are tested.
    pub families: usize,
    pub family_samples_zero: usize,
}

impl SubcaseResult {
    pub fn no_family(&self) -> bool {
        self.leading_matches != Some(false) && self.members.iter().all(|m| !m.identically_zero) && self.family_samples_zero == 0
    }
}

/// Terms of highest degree in `t` after `(x, y, z) ↦ (x t^m, y t^p, z t^q)`.
fn leading_part(p: &MPoly<Rational>, w: &[i64; 3]) -> MPoly<Rational> {
    let vars = p.vars();
    let idx: Vec<usize> = ["x", "y", "z"].iter().map(|v| vars.iter().position(|u| u == v).unwrap()).collect();
    let deg = |e: &Vec<i32>| -> i64 { (0..3).map(|k| e[idx[k]] as i64 * w[k]).sum() };
    let top = p.terms().map(|(e, _)| deg(e)).max().unwrap_or(0);
    MPoly::from_terms(&vars, p.terms().filter(|(e, _)| deg(e) == top).map(|(e, c)| (e.clone(), c.clone())))
}

fn run_subcase(sc: &Subcase, bound: u64) -> Result<SubcaseResult> {
    let poly = CaseId::C32.poly();
    let eq = parse_poly(sc.equation, &C32_VARS)?;
    let leading_matches = match sc.factor {
        Some(f) => Some(leading_part(poly, &sc.w).sub(&parse_poly(f, &C32_VARS)?.mul(&eq)).is_zero()),
        None => None,
    };
    // c = 1 (c ≠ 0), and the fixed root absorbed into t
    let mut fix: HashMap<&str, Rational> = HashMap::new();
    fix.insert("c", int(1));
    if let Some(v) = sc.fixed {
        fix.insert(v, int(1));
    }
    let reduced = eq.partial_eval(&fix)?;
    let vars = reduced.vars();
    let params: Vec<&str> = ["a", "b"].into_iter().filter(|p| reduced.degree_range(p).is_some_and(|r| r != (0, 0))).collect();
    let unknowns: Vec<&str> = ["x", "y", "z"].into_iter().filter(|u| vars.contains(u)).collect();
    let terms = reduced
        .collect(&unknowns)?
        .into_iter()
        .map(|(exps, mut coeff)| {
            let keep: HashMap<&str, Rational> = coeff.vars().into_iter().filter(|v| !params.contains(v)).map(|v| (v, int(1))).collect();
            if !keep.is_empty() {
                coeff = coeff.partial_eval(&keep)?;
            }
            coeff.reorder(&params)?;
            Ok(Term { coeff, exps })
        })
        .collect::<Result<Vec<_>>>()?;
    let rel = UnitRelation { unknowns: unknowns.iter().map(|s| s.to_string()).collect(), params: params.iter().map(|s| s.to_string()).collect(), terms };

    let full_roots = |assign: &BTreeMap<String, RootOfUnity>| -> [RootOfUnity; 3] {
        ["x", "y", "z"].map(|v| assign.get(v).copied().unwrap_or_else(RootOfUnity::one))
    };
    let nondegenerate = |roots: &[RootOfUnity; 3], a: &Rational, b: Option<&Rational>| -> bool {
        let c = int(1);
        let fixed_ok = |i: usize, v: &str| sc.fixed == Some(v) || !roots[i].is_one();
        let roots_ok = fixed_ok(0, "x") && fixed_ok(1, "y") && fixed_ok(2, "z") && roots[0] != roots[1];
        let params_ok = !a.is_zero()
            && c != *a
            && b.map_or(true, |b| !b.is_zero() && b != a && *b != c);
        roots_ok && params_ok
    };
    let test = |roots: [RootOfUnity; 3], a: &Rational, b: &Rational| -> Result<bool> {
        let cfg = AngleConfig::unchecked(CaseId::C32, vec![a.clone(), b.clone(), int(1)], roots);
        Ok(coset_family_test(&cfg, &sc.w)?.is_some())
    };

    let mut members = vec![];
    let mut families = 0;
    let mut family_samples_zero = 0;
    for rec in brute_solve(&rel, bound)? {
        let roots = full_roots(&rec.assignment);
        if rec.param_family.is_some() {
            let assign: Vec<RootOfUnity> = rel.unknowns.iter().map(|u| rec.assignment[u]).collect();
            let sols = monomial_linear_solve(&specialize(&rel, &assign)?)?;
            families += 1;
            if let (Some((p0, d)), true) = (sols.line, sc.family_test) {
                for s in [2, 3, 5, 7, 11] {
                    let a = &p0[0] + int(s) * &d[0];
                    let b = &p0[1] + int(s) * &d[1];
                    if nondegenerate(&roots, &a, Some(&b)) && test(roots, &a, &b)? {
                        family_samples_zero += 1;
                    }
                }
            }
            continue;
        }
        let get = |name: &str| rec.params.get(name).map(|s| crate::algebra::parse_rational(s)).transpose();
        let a = get("a")?.unwrap_or_else(Rational::zero);
        let b = get("b")?;
        if !nondegenerate(&roots, &a, b.as_ref()) {
            continue;
        }
        let identically_zero = match (&b, sc.family_test) {
            (Some(b), true) => test(roots, &a, b)?,
            _ => false,
        };
        let mut params = vec![a];
        params.extend(b);
        params.push(int(1));
        members.push(SubcaseMember { roots, params, identically_zero });
    }
    Ok(SubcaseResult {
        label: sc.label,
        w: sc.w,
        equation: sc.equation,
        leading_matches,
        bound,
        members,
        families,
        family_samples_zero,
    })
}

/// Scripted checks of the triple-plus-pair sub-cases at roots of order dividing 6.
pub fn subcase_regressions() -> Result<Vec<SubcaseResult>> {
    SUBCASES.iter().map(|sc| run_subcase(sc, 6)).collect()
}

// ---------------------------------------------------------------------------
// summary table

/// The classification by angle content, one row per kind of space, with the
/// operations that check it.
pub fn classification_table() -> Value {
    json!([
        {
            "angles": "infinitely many pairs",
            "space": "homothetic to Q(sqrt(-d)), d not 1 or 3",
            "type": ["CM", "rectangular"],
            "checkedBy": ["spaces::find_rational_angles", "spaces::is_cm"]
        },
        {
            "angles": "infinitely many 4-tuples",
            "space": "homothetic to Q(i)",
            "type": ["CM", "superrectangular"],
            "checkedBy": ["spaces::find_rational_angles", "spaces::lattice_root_orders"]
        },
        {
            "angles": "infinitely many 6-tuples",
            "space": "homothetic to Q(sqrt(-3))",
            "type": ["CM", "superrectangular"],
            "checkedBy": ["spaces::find_rational_angles", "classify::fivetuple_search"]
        },
        {
            "angles": "one 4-tuple",
            "space": "superrectangular, not CM; the 4-tuple is the only rational angle content",
            "type": ["superrectangular"],
            "checkedBy": ["classify::search_case4", "classify::fivetuple_search", "classify::superrect_extra_angles"]
        },
        {
            "angles": "one 4-tuple",
            "space": "homothetic to one of the two dodecagonal spaces",
            "type": ["dodecagonal"],
            "checkedBy": ["classify::search_case4", "classify::dodecagonal_report", "classify::dodecagonal_extra_angles"]
        },
        {
            "angles": "a triple and a disjoint pair",
            "space": "elliptic families expected, plus finitely many exceptions",
            "type": [],
            "checkedBy": ["coset::verify_families", "classify::subcase_regressions", "examples::genus5_verify"]
        },
        {
            "angles": "three disjoint pairs",
            "space": "elliptic families expected, plus finitely many exceptions",
            "type": [],
            "checkedBy": ["coset::verify_families", "examples::ec_verify"]
        }
    ])
}
