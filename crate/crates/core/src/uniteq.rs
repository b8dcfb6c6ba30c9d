//! Unit equations: linear relations among roots of unity with rational coefficients.
//!
//! Two independent routes. [`brute_solve`] enumerates every assignment of roots of
//! order dividing a bound. [`cj_solve`] splits the relation into minimal vanishing
//! blocks and restricts each block, normalized by its first term, to the squarefree
//! orders allowed by the Conway–Jones bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::arith::{gcd, lcm, primes_upto};
use crate::algebra::cyclo::root_table;
use crate::algebra::linalg::{coordinate_rows, solve_affine};
use crate::algebra::rational::{common_denominator, rational_sqrt};
use crate::algebra::{parse_poly, parse_rational, Cyclo, MPoly, Rational, RootOfUnity};
use crate::error::{Error, Result};

/// Largest bound accepted by [`brute_solve`].
pub const BRUTE_BOUND_CAP: u64 = 360;

/// One term `coeff(params) · Π unknown_i^{exps_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: MPoly<Rational>,
    pub exps: Vec<i32>,
}

/// `Σ terms = 0` in root-of-unity unknowns and (at most two) rational parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitRelation {
    pub unknowns: Vec<String>,
    pub params: Vec<String>,
    pub terms: Vec<Term>,
}

impl UnitRelation {
    /// `c_0 + c_1 ξ_1 + … + c_{k-1} ξ_{k-1}` with rational coefficients.
    pub fn normalized(coeffs: &[Rational]) -> UnitRelation {
        let k = coeffs.len();
        let unknowns: Vec<String> = (1..k).map(|i| format!("x{i}")).collect();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut exps = vec![0; k - 1];
                if i > 0 {
                    exps[i - 1] = 1;
                }
                Term { coeff: MPoly::constant(&[], c.clone()), exps }
            })
            .collect();
        UnitRelation { unknowns, params: vec![], terms }
    }

    /// Parses `{"unknowns":[..], "params":[..], "terms":[{"coeff":"expr","exp":[..]}, ..]}`,
    /// or the shorthand `{"coeffs":["c0", "c1", ..]}` for the normalized relation.
    pub fn from_json(v: &Value) -> Result<UnitRelation> {
        let bad = |m: &str| Error::Parse(format!("relation JSON: {m}"));
        if let Some(cs) = v.get("coeffs") {
            let cs: Vec<Value> = serde_json::from_value(cs.clone()).map_err(|_| bad("coeffs"))?;
            let coeffs = cs
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(bad("coeffs")),
                })
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() < 2 {
                return Err(bad("need at least two coefficients"));
            }
            return Ok(UnitRelation::normalized(&coeffs));
        }
        let unknowns: Vec<String> = serde_json::from_value(v["unknowns"].clone()).map_err(|_| bad("unknowns"))?;
        let params: Vec<String> = match v.get("params") {
            Some(p) => serde_json::from_value(p.clone()).map_err(|_| bad("params"))?,
            None => vec![],
        };
        if params.len() > 2 {
            return Err(Error::Invalid("at most two rational parameters are supported".into()));
        }
        let pnames: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let coeff = match &t["coeff"] {
                Value::String(s) => parse_poly(s, &pnames)?,
                Value::Number(n) => parse_poly(&n.to_string(), &pnames)?,
                _ => return Err(bad("coeff")),
            };
            let exps: Vec<i32> = serde_json::from_value(t["exp"].clone()).map_err(|_| bad("exp"))?;
            if exps.len() != unknowns.len() {
                return Err(bad("exponent length"));
            }
            terms.push(Term { coeff, exps });
        }
        Ok(UnitRelation { unknowns, params, terms })
    }

    fn constant_coeffs(&self) -> Option<Vec<Rational>> {
        self.terms
            .iter()
            .map(|t| {
                if t.coeff.is_zero() {
                    return Some(Rational::zero());
                }
                let (e, c) = t.coeff.terms().next()?;
                (t.coeff.num_terms() == 1 && e.iter().all(|&k| k == 0)).then(|| c.clone())
            })
            .collect()
    }
}

/// Squarefree `Q` with `Σ_{p | Q} (p - 2) ≤ k - 2`, ascending.
pub fn cj_admissible_orders(k: usize) -> Vec<u64> {
    if k < 2 {
        return vec![1];
    }
    let budget = k as i64 - 2;
    let primes = primes_upto(k as u64);
    let mut out = vec![];
    for mask in 0u32..(1 << primes.len()) {
        let chosen: Vec<u64> = (0..primes.len()).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
        if chosen.iter().map(|&p| p as i64 - 2).sum::<i64>() <= budget {
            out.push(chosen.iter().product());
        }
    }
    out.sort();
    out
}

/// `lcm` of the admissible orders: every block solution lives in this many roots.
pub fn cj_bound(k: usize) -> u64 {
    cj_admissible_orders(k).into_iter().fold(1, lcm)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionRecord {
    pub assignment: BTreeMap<String, RootOfUnity>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_family: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    pub subsum_partition: Vec<Vec<usize>>,
    pub common_order: u64,
}

/// Integer term vectors in ℚ(ζ_B) for a relation with constant coefficients.
struct IntTerms {
    bound: u64,
    table: std::sync::Arc<Vec<Vec<i64>>>,
    coeffs: Vec<i64>,
}

impl IntTerms {
    fn new(coeffs: &[Rational], bound: u64) -> IntTerms {
        let den = common_denominator(coeffs);
        let coeffs = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer().to_i64().expect("coefficient fits i64"))
            .collect();
        IntTerms { bound, table: root_table(bound), coeffs }
    }

    fn term(&self, t: usize, exponent: i64) -> Vec<i64> {
        let e = exponent.rem_euclid(self.bound as i64) as usize;
        self.table[e].iter().map(|v| v * self.coeffs[t]).collect()
    }
}

fn add_into(acc: &mut [i64], v: &[i64]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// Greedy split of vanishing term values into minimal vanishing subsums.
fn minimal_partition(values: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..values.len()).collect();
    let mut out = vec![];
    let dim = values.first().map_or(0, |v| v.len());
    while !left.is_empty() {
        let n = left.len();
        let mut found = None;
        'size: for size in 1..=n {
            for mask in 0u64..(1 << n) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let mut s = vec![0i64; dim];
                for (i, &t) in left.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        add_into(&mut s, &values[t]);
                    }
                }
                if s.iter().all(|&v| v == 0) {
                    found = Some(mask);
                    break 'size;
                }
            }
        }
        // the whole remainder vanishes, so a block always exists
        let mask = found.expect("vanishing remainder");
        let block: Vec<usize> = left.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &t)| t).collect();
        left.retain(|t| !block.contains(t));
        out.push(block);
    }
    out.sort();
    out
}

fn common_order_of(assign: &[RootOfUnity]) -> u64 {
    assign.iter().fold(1, |acc, r| lcm(acc, r.order()))
}

/// Exhaustive solver over all roots of order dividing `bound` (lexicographic output).
pub fn brute_solve(rel: &UnitRelation, bound: u64) -> Result<Vec<SolutionRecord>> {
    if bound == 0 || bound > BRUTE_BOUND_CAP {
        return Err(Error::Invalid(format!("bound must lie in 1..={BRUTE_BOUND_CAP}")));
    }
    let raw = match rel.constant_coeffs() {
        Some(c) if rel.params.is_empty() => brute_constant(rel, &c, bound),
        _ => return brute_parametric(rel, bound),
    };
    let coeffs = rel.constant_coeffs().unwrap();
    let it = IntTerms::new(&coeffs, bound);
    Ok(raw
        .into_iter()
        .map(|ks| {
            let values: Vec<Vec<i64>> = rel.terms.iter().enumerate().map(|(t, term)| it.term(t, exponent(&term.exps, &ks))).collect();
            record(rel, &ks, bound, minimal_partition(&values), BTreeMap::new(), None, vec![])
        })
        .collect())
}

fn exponent(exps: &[i32], ks: &[u64]) -> i64 {
    exps.iter().zip(ks).map(|(&e, &k)| e as i64 * k as i64).sum()
}

fn record(
    rel: &UnitRelation,
    ks: &[u64],
    bound: u64,
    partition: Vec<Vec<usize>>,
    params: BTreeMap<String, String>,
    param_family: Option<String>,
    flags: Vec<String>,
) -> SolutionRecord {
    let roots: Vec<RootOfUnity> = ks.iter().map(|&k| RootOfUnity::of(k as i64, bound)).collect();
    SolutionRecord {
        assignment: rel.unknowns.iter().cloned().zip(roots.iter().copied()).collect(),
        params,
        param_family,
        flags,
        subsum_partition: partition,
        common_order: common_order_of(&roots),
    }
}

/// Exponent tuples (in ℚ(ζ_bound)) of every solution, lexicographically sorted.
fn brute_constant(rel: &UnitRelation, coeffs: &[Rational], bound: u64) -> Vec<Vec<u64>> {
    let it = IntTerms::new(coeffs, bound);
    let u = rel.unknowns.len();
    let dim = it.table[0].len();
    let separable = rel.terms.iter().all(|t| t.exps.iter().filter(|&&e| e != 0).count() <= 1);
    let mut constant = vec![0i64; dim];
    for (t, term) in rel.terms.iter().enumerate() {
        if term.exps.iter().all(|&e| e == 0) {
            add_into(&mut constant, &it.term(t, 0));
        }
    }
    let mut out = vec![];
    if !separable || u < 2 {
        for ks in tuples(u, bound) {
            let mut s = constant.clone();
            for (t, term) in rel.terms.iter().enumerate() {
                if term.exps.iter().any(|&e| e != 0) {
                    add_into(&mut s, &it.term(t, exponent(&term.exps, &ks)));
                }
            }
            if s.iter().all(|&v| v == 0) {
                out.push(ks);
            }
        }
        return out;
    }
    // meet in the middle over two halves of the unknowns
    let h = u / 2;
    let partial = |range: std::ops::Range<usize>, ks: &[u64]| -> Vec<i64> {
        let mut s = vec![0i64; dim];
        for (t, term) in rel.terms.iter().enumerate() {
            if let Some(i) = term.exps.iter().position(|&e| e != 0) {
                if range.contains(&i) {
                    add_into(&mut s, &it.term(t, term.exps[i] as i64 * ks[i - range.start] as i64));
                }
            }
        }
        s
    };
    let mut left: HashMap<Vec<i64>, Vec<Vec<u64>>> = HashMap::new();
    for ks in tuples(h, bound) {
        left.entry(partial(0..h, &ks)).or_default().push(ks);
    }
    for ks in tuples(u - h, bound) {
        let mut key = partial(h..u, &ks);
        add_into(&mut key, &constant);
        key.iter_mut().for_each(|v| *v = -*v);
        if let Some(ls) = left.get(&key) {
            for l in ls {
                let mut full = l.clone();
                full.extend_from_slice(&ks);
                out.push(full);
            }
        }
    }
    out.sort();
    out
}

fn tuples(len: usize, bound: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = bound.checked_pow(len as u32).expect("enumeration size");
    (0..total).map(move |mut idx| {
        let mut ks = vec![0u64; len];
        for i in (0..len).rev() {
            ks[i] = idx % bound;
            idx /= bound;
        }
        ks
    })
}

fn brute_parametric(rel: &UnitRelation, bound: u64) -> Result<Vec<SolutionRecord>> {
    let pn: Vec<&str> = rel.params.iter().map(|s| s.as_str()).collect();
    // split every coefficient along the monomials 1, u, v, uv
    let slots: Vec<Vec<i32>> = match pn.len() {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1]],
        _ => vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
    };
    for t in &rel.terms {
        for (e, _) in t.coeff.terms() {
            if !slots.contains(e) {
                return Err(Error::Invalid("parameters must enter through the monomials 1, u, v, uv".into()));
            }
        }
    }
    let mut out = vec![];
    for ks in tuples(rel.unknowns.len(), bound) {
        let mut c: Vec<Cyclo> = vec![Cyclo::zero(); 4];
        let mut term_roots = vec![];
        for t in &rel.terms {
            let root = Cyclo::root(&RootOfUnity::of(exponent(&t.exps, &ks), bound));
            for (slot, key) in slots.iter().enumerate() {
                let k = t.coeff.coeff(key);
                if !k.is_zero() {
                    c[slot] = &c[slot] + &root.scale(&k);
                }
            }
            term_roots.push(root);
        }
        let eq = MonomialEquation {
            c1: c[0].clone(),
            cu: c[1].clone(),
            cv: (pn.len() == 2).then(|| c[2].clone()),
            cuv: (pn.len() == 2).then(|| c[3].clone()),
        };
        let sols = if pn.is_empty() {
            if !c[0].is_zero() {
                continue;
            }
            MonomialSolutions { points: vec![MonomialPoint { u: Rational::zero(), v: None, flags: vec![] }], infinite: None, line: None }
        } else {
            monomial_linear_solve(&eq)?
        };
        if let Some(desc) = &sols.infinite {
            out.push(record(rel, &ks, bound, vec![], BTreeMap::new(), Some(desc.clone()), vec![]));
        }
        for p in &sols.points {
            let mut params = BTreeMap::new();
            let mut values: HashMap<&str, Rational> = HashMap::new();
            if let Some(&name) = pn.first() {
                params.insert(name.to_string(), p.u.to_string());
                values.insert(name, p.u.clone());
            }
            if let (Some(&name), Some(v)) = (pn.get(1), &p.v) {
                params.insert(name.to_string(), v.to_string());
                values.insert(name, v.clone());
            }
            // concrete term values for the subsum partition
            let vals: Vec<Cyclo> = rel
                .terms
                .iter()
                .zip(&term_roots)
                .map(|(t, r)| Ok(r.scale(&t.coeff.eval(&values)?)))
                .collect::<Result<_>>()?;
            let (_, rows) = coordinate_rows(&vals)?;
            let den = rows.iter().flatten().fold(BigInt::one(), |acc, r| num_integer::Integer::lcm(&acc, r.denom()));
            let ints: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| r.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer().to_i64().unwrap()).collect())
                .collect();
            out.push(record(rel, &ks, bound, minimal_partition(&ints), params, None, p.flags.clone()));
        }
    }
    Ok(out)
}

/// A normalized block: ratios `ξ_j / ξ_first` for each index of the block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CjBlock {
    pub indices: Vec<usize>,
    pub ratios: Vec<RootOfUnity>,
    /// The block containing the constant term has no free rotation.
    pub anchored: bool,
}

/// A family of solutions: one normalized solution per block, each non-anchored
/// block multiplied by its own free root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CjFamily {
    pub blocks: Vec<CjBlock>,
    pub common_order: u64,
}

impl CjFamily {
    pub fn is_finite(&self) -> bool {
        self.blocks.iter().all(|b| b.anchored)
    }

    /// Members whose roots all have order dividing `bound`, as exponent tuples for unknowns 1..k.
    pub fn expand(&self, k: usize, bound: u64) -> Vec<Vec<u64>> {
        if self.blocks.iter().flat_map(|b| &b.ratios).any(|r| bound % r.order() != 0) {
            return vec![];
        }
        let free: Vec<&CjBlock> = self.blocks.iter().filter(|b| !b.anchored).collect();
        let mut out = vec![];
        for rot in tuples(free.len(), bound) {
            let mut ks = vec![0u64; k];
            for b in &self.blocks {
                let shift = match free.iter().position(|f| std::ptr::eq(*f, b)) {
                    Some(i) => rot[i],
                    None => 0,
                };
                for (&idx, r) in b.indices.iter().zip(&b.ratios) {
                    ks[idx] = (r.exponent_in(bound) + shift) % bound;
                }
            }
            out.push(ks[1..].to_vec());
        }
        out
    }
}

/// Conway–Jones route; requires a relation `c_0 + Σ c_j ξ_j` with one constant term
/// and each unknown appearing once with exponent 1.
pub fn cj_solve(rel: &UnitRelation) -> Result<Vec<CjFamily>> {
    let coeffs = normalized_coeffs(rel)?;
    let k = coeffs.len();
    let mut memo: HashMap<Vec<Rational>, Vec<Vec<RootOfUnity>>> = HashMap::new();
    let mut out = BTreeSet::new();
    for partition in set_partitions(k) {
        if partition.iter().any(|b| b.len() < 2) {
            continue;
        }
        let mut per_block = vec![];
        for block in &partition {
            let key: Vec<Rational> = block.iter().map(|&i| coeffs[i].clone()).collect();
            let sols = memo.entry(key.clone()).or_insert_with(|| minimal_block_solutions(&key)).clone();
            if sols.is_empty() {
                break;
            }
            per_block.push(sols);
        }
        if per_block.len() != partition.len() {
            continue;
        }
        for choice in product_indices(&per_block.iter().map(|s| s.len()).collect::<Vec<_>>()) {
            let blocks: Vec<CjBlock> = partition
                .iter()
                .zip(&choice)
                .zip(&per_block)
                .map(|((b, &c), sols)| CjBlock { indices: b.clone(), ratios: sols[c].clone(), anchored: b[0] == 0 })
                .collect();
            let common_order = blocks.iter().flat_map(|b| &b.ratios).fold(1, |acc, r| lcm(acc, r.order()));
            out.insert(CjFamily { blocks, common_order });
        }
    }
    Ok(out.into_iter().collect())
}

fn normalized_coeffs(rel: &UnitRelation) -> Result<Vec<Rational>> {
    let coeffs = rel.constant_coeffs().filter(|_| rel.params.is_empty());
    let bad = || Error::Precondition("expected c_0 + Σ c_j ξ_j with one constant term".into());
    let coeffs = coeffs.ok_or_else(bad)?;
    let constant: Vec<usize> = (0..rel.terms.len()).filter(|&t| rel.terms[t].exps.iter().all(|&e| e == 0)).collect();
    if constant.len() != 1 || coeffs.iter().any(|c| c.is_zero()) {
        return Err(bad());
    }
    let mut ordered = vec![coeffs[constant[0]].clone()];
    for (u, _) in rel.unknowns.iter().enumerate() {
        let ts: Vec<usize> = (0..rel.terms.len()).filter(|&t| rel.terms[t].exps[u] != 0).collect();
        if ts.len() != 1 || rel.terms[ts[0]].exps[u] != 1 || rel.terms[ts[0]].exps.iter().filter(|&&e| e != 0).count() != 1 {
            return Err(bad());
        }
        ordered.push(coeffs[ts[0]].clone());
    }
    if ordered.len() != rel.terms.len() {
        return Err(bad());
    }
    Ok(ordered)
}

/// Ratios `(1, r_1, …)` with `Σ c_j r_j = 0` and no vanishing proper subsum.
fn minimal_block_solutions(coeffs: &[Rational]) -> Vec<Vec<RootOfUnity>> {
    let s = coeffs.len();
    let orders = cj_admissible_orders(s);
    let maximal: Vec<u64> = orders.iter().copied().filter(|&q| !orders.iter().any(|&o| o != q && o % q == 0)).collect();
    let mut found = BTreeSet::new();
    for q in maximal {
        let it = IntTerms::new(coeffs, q);
        for ks in tuples(s - 1, q) {
            let mut values = vec![it.term(0, 0)];
            for (j, &k) in ks.iter().enumerate() {
                values.push(it.term(j + 1, k as i64));
            }
            let dim = values[0].len();
            let mut vanishing_proper = false;
            let full = (1u64 << s) - 1;
            for mask in 1..=full {
                let mut acc = vec![0i64; dim];
                for (i, v) in values.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        add_into(&mut acc, v);
                    }
                }
                if acc.iter().all(|&v| v == 0) {
                    if mask != full {
                        vanishing_proper = true;
                        break;
                    }
                } else if mask == full {
                    vanishing_proper = true;
                }
            }
            if !vanishing_proper {
                let mut ratios = vec![RootOfUnity::one()];
                ratios.extend(ks.iter().map(|&k| RootOfUnity::of(k as i64, q)));
                found.insert(ratios);
            }
        }
    }
    found.into_iter().collect()
}

/// All set partitions of `0..n`, blocks sorted by their least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![];
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = rgs.len();
        if i == n {
            let blocks = (0..=max).map(|b| (0..n).filter(|&j| rgs[j] == b).collect::<Vec<_>>()).filter(|b| !b.is_empty());
            out.push(blocks.collect());
            return;
        }
        for b in 0..=(max + 1) {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    rgs[0] = 0;
    rec(1, 0, &mut rgs, &mut out);
    out
}

fn product_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &s in sizes {
        out = out.into_iter().flat_map(|p| (0..s).map(move |i| {
            let mut q = p.clone();
            q.push(i);
            q
        })).collect();
    }
    out
}

/// The monomial equation in the parameters obtained by fixing the unknowns.
pub fn specialize(rel: &UnitRelation, roots: &[RootOfUnity]) -> Result<MonomialEquation> {
    if roots.len() != rel.unknowns.len() || rel.params.is_empty() || rel.params.len() > 2 {
        return Err(Error::Invalid("need one root per unknown and one or two parameters".into()));
    }
    let two = rel.params.len() == 2;
    let slots: Vec<Vec<i32>> = if two { vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]] } else { vec![vec![0], vec![1]] };
    let mut c = vec![Cyclo::zero(); slots.len()];
    for t in &rel.terms {
        if t.coeff.terms().any(|(e, _)| !slots.contains(e)) {
            return Err(Error::Invalid("parameters must enter through the monomials 1, u, v, uv".into()));
        }
        let root = t.exps.iter().zip(roots).fold(RootOfUnity::one(), |acc, (&e, r)| acc.mul(&r.pow(e as i64))).to_cyclo();
        for (slot, key) in slots.iter().enumerate() {
            let k = t.coeff.coeff(key);
            if !k.is_zero() {
                c[slot] = &c[slot] + &root.scale(&k);
            }
        }
    }
    Ok(MonomialEquation {
        c1: c[0].clone(),
        cu: c[1].clone(),
        cv: two.then(|| c[2].clone()),
        cuv: two.then(|| c[3].clone()),
    })
}

/// Keeps one representative per Galois orbit (`ξ ↦ ξ^k`, `k` a unit mod the common order).
/// Parametric records are passed through.
pub fn galois_reduce(records: Vec<SolutionRecord>) -> Vec<SolutionRecord> {
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for r in records {
        if !r.params.is_empty() || r.param_family.is_some() {
            out.push(r);
            continue;
        }
        let n = r.common_order;
        let orbit_min = (1..=n)
            .filter(|&k| gcd(k, n) == 1)
            .map(|k| r.assignment.values().map(|x| x.pow(k as i64)).map(|x| (x.den(), x.num())).collect::<Vec<_>>())
            .min()
            .unwrap();
        if seen.insert(orbit_min) {
            out.push(r);
        }
    }
    out
}

/// `c1 + cu·u + cv·v + cuv·uv = 0` with rational unknowns `u`, `v`.
#[derive(Debug, Clone)]
pub struct MonomialEquation {
    pub c1: Cyclo,
    pub cu: Cyclo,
    pub cv: Option<Cyclo>,
    pub cuv: Option<Cyclo>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonomialPoint {
    #[serde(serialize_with = "crate::ser::rat")]
    pub u: Rational,
    #[serde(serialize_with = "crate::ser::opt_rat")]
    pub v: Option<Rational>,
    /// `"u=v"`, `"zero"` when applicable.
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonomialSolutions {
    pub points: Vec<MonomialPoint>,
    /// Set when the solutions form a positive-dimensional family.
    pub infinite: Option<String>,
    /// `(point, direction)` when the family is the line `point + s·direction`.
    #[serde(skip)]
    pub line: Option<([Rational; 2], [Rational; 2])>,
}

fn point(u: Rational, v: Option<Rational>) -> MonomialPoint {
    let mut flags = vec![];
    if v.as_ref() == Some(&u) {
        flags.push("u=v".to_string());
    }
    if u.is_zero() || v.as_ref().is_some_and(|v| v.is_zero()) {
        flags.push("zero".to_string());
    }
    MonomialPoint { u, v, flags }
}

/// Rational solutions of a monomial equation, decomposed over a ℚ-basis.
pub fn monomial_linear_solve(eq: &MonomialEquation) -> Result<MonomialSolutions> {
    let two = eq.cv.is_some();
    let mut elems = vec![eq.c1.clone(), eq.cu.clone()];
    if two {
        elems.push(eq.cv.clone().unwrap());
        elems.push(eq.cuv.clone().unwrap_or_else(Cyclo::zero));
    }
    let (_, rows) = coordinate_rows(&elems)?;
    let dim = rows[0].len();
    let unknowns = elems.len() - 1;
    // system: Σ_j rows[j+1][r]·w_j = -rows[0][r]
    let a: Vec<Vec<Rational>> = (0..dim).map(|r| (0..unknowns).map(|j| rows[j + 1][r].clone()).collect()).collect();
    let b: Vec<Rational> = (0..dim).map(|r| -rows[0][r].clone()).collect();
    let Some((x, null)) = solve_affine(&a, &b) else {
        return Ok(MonomialSolutions { points: vec![], infinite: None, line: None });
    };
    if !two {
        return Ok(if null.is_empty() {
            MonomialSolutions { points: vec![point(x[0].clone(), None)], infinite: None, line: None }
        } else {
            MonomialSolutions { points: vec![], infinite: Some("every rational value".into()), line: None }
        });
    }
    // impose w = u·v on x + Σ s_i d_i
    let mut points = vec![];
    let infinite = match null.len() {
        0 => {
            if x[2] == &x[0] * &x[1] {
                points.push(point(x[0].clone(), Some(x[1].clone())));
            }
            None
        }
        1 => {
            let d = &null[0];
            let qa = &d[0] * &d[1];
            let qb = &x[0] * &d[1] + &x[1] * &d[0] - &d[2];
            let qc = &x[0] * &x[1] - &x[2];
            let mut ss = vec![];
            if qa.is_zero() {
                if qb.is_zero() {
                    if qc.is_zero() {
                        return Ok(MonomialSolutions {
                            points: vec![],
                            infinite: Some(line_desc(&x, d)),
                            line: Some(([x[0].clone(), x[1].clone()], [d[0].clone(), d[1].clone()])),
                        });
                    }
                } else {
                    ss.push(-qc / qb);
                }
            } else if let Some(r) = rational_sqrt(&(&qb * &qb - Rational::from_integer(4.into()) * &qa * &qc)) {
                let two_a = &qa * Rational::from_integer(2.into());
                ss.push((-&qb + &r) / &two_a);
                ss.push((-&qb - &r) / &two_a);
            }
            ss.sort();
            ss.dedup();
            for s in ss {
                points.push(point(&x[0] + &s * &d[0], Some(&x[1] + &s * &d[1])));
            }
            None
        }
        k => Some(format!("conic section of a {k}-dimensional solution space")),
    };
    points.sort_by(|p, q| (&p.u, &p.v).cmp(&(&q.u, &q.v)));
    Ok(MonomialSolutions { points, infinite, line: None })
}

fn line_desc(x: &[Rational], d: &[Rational]) -> String {
    format!("(u,v) = ({}, {}) + s·({}, {})", x[0], x[1], d[0], d[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn rel(c: &[i64]) -> UnitRelation {
        UnitRelation::normalized(&c.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    #[test]
    fn admissible_orders() {
        assert_eq!(cj_admissible_orders(3), vec![1, 2, 3, 6]);
        assert_eq!(cj_admissible_orders(4), vec![1, 2, 3, 6]);
        assert_eq!(cj_admissible_orders(6), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(cj_bound(5), 30);
    }

    #[test]
    fn brute_examples() {
        let s = brute_solve(&rel(&[1, 1]), 12).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].assignment["x1"], RootOfUnity::minus_one());
        let s = brute_solve(&rel(&[1, 1, 1]), 6).unwrap();
        let got: Vec<(RootOfUnity, RootOfUnity)> = s.iter().map(|r| (r.assignment["x1"], r.assignment["x2"])).collect();
        assert_eq!(got, vec![(RootOfUnity::of(1, 3), RootOfUnity::of(2, 3)), (RootOfUnity::of(2, 3), RootOfUnity::of(1, 3))]);
        assert!(brute_solve(&rel(&[1, 1]), 361).is_err());
    }

    #[test]
    fn cj_examples() {
        let f = cj_solve(&rel(&[2, -1, -1])).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].is_finite());
        assert!(f[0].blocks[0].ratios.iter().all(|r| r.is_one()));
        // four unit vectors summing to zero pair off into antipodal pairs
        let f = cj_solve(&rel(&[1, 1, 1, 1])).unwrap();
        assert!(f.iter().all(|fam| fam.blocks.iter().all(|b| b.indices.len() == 2)));
        assert_eq!(f.len(), 3);
        let f = cj_solve(&rel(&[1, -1, -1, 1])).unwrap();
        for fam in f.iter().filter(|fam| fam.blocks.len() == 1) {
            assert_eq!(6 % fam.common_order, 0);
        }
    }

    #[test]
    fn cj_matches_brute_small() {
        for c in [[1, 1, 1, 1], [1, -1, -1, 1], [2, -1, -1, 1], [1, 2, 1, 2], [1, 1, -2, 1]] {
            let r = rel(&c);
            let b = cj_bound(4);
            let brute: BTreeSet<Vec<u64>> = brute_solve(&r, b)
                .unwrap()
                .iter()
                .map(|s| s.assignment.values().map(|x| x.exponent_in(b)).collect())
                .collect();
            let cj: BTreeSet<Vec<u64>> = cj_solve(&r).unwrap().iter().flat_map(|f| f.expand(4, b)).collect();
            assert_eq!(brute, cj, "relation {c:?}");
        }
    }

    #[test]
    fn partitions_count() {
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(set_partitions(5).len(), 52);
    }

    #[test]
    fn parametric_theta_relation() {
        // θ - x/θ - a·x + a = 0
        let v = serde_json::json!({
            "unknowns": ["theta", "x"], "params": ["a"],
            "terms": [
                {"coeff": "1", "exp": [1, 0]},
                {"coeff": "-1", "exp": [-1, 1]},
                {"coeff": "-a", "exp": [0, 1]},
                {"coeff": "a", "exp": [0, 0]},
            ]
        });
        let r = UnitRelation::from_json(&v).unwrap();
        let sols = brute_solve(&r, 24).unwrap();
        for s in &sols {
            let a: Rational = crate::algebra::parse_rational(s.params.get("a").map_or("0", |v| v)).unwrap();
            let degenerate = s.param_family.is_some() || a.is_zero() || a == int(1) || a == int(-1);
            let theta = s.assignment["theta"];
            if !degenerate && !s.assignment["x"].is_one() && theta.order() > 2 {
                assert_eq!(6 % theta.order(), 0, "{s:?}");
            }
        }
    }

    #[test]
    fn monomial_solver() {
        // 1 - u = 0 in one unknown
        let eq = MonomialEquation { c1: Cyclo::one(), cu: Cyclo::from_int(-1), cv: None, cuv: None };
        assert_eq!(monomial_linear_solve(&eq).unwrap().points[0].u, int(1));
        // (u - 2)(v - 3) = uv - 3u - 2v + 6 over ℚ(i): u=2 or v=3, infinitely many
        let eq = MonomialEquation { c1: Cyclo::from_int(6), cu: Cyclo::from_int(-3), cv: Some(Cyclo::from_int(-2)), cuv: Some(Cyclo::one()) };
        assert!(monomial_linear_solve(&eq).unwrap().infinite.is_some());
        // u + i·v - (2 + 3i) = 0 forces u = 2, v = 3; uv term absent
        let i = Cyclo::zeta(4);
        let eq = MonomialEquation {
            c1: -(Cyclo::from_int(2) + i.scale_int(3)),
            cu: Cyclo::one(),
            cv: Some(i.clone()),
            cuv: Some(Cyclo::zero()),
        };
        let s = monomial_linear_solve(&eq).unwrap();
        assert_eq!(s.points, vec![point(int(2), Some(int(3)))]);
    }
}
