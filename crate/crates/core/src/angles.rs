//! Configuration equations: the single-angle curve, τ recovery from tuples and
//! pairs, the three eliminants, the proportional branch and exact angle checks.
//!
//! Angles are stored squared: an amplitude α is the root of unity e^{2iα}.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::arith::lcm;
use crate::algebra::embed::{quadratic_roots, ComplexApprox};
use crate::algebra::{parse_rational, Cyclo, MPoly, Rational, RootOfUnity};
use crate::data::{C222_POLY, C222_VARS, C32_POLY, C32_VARS, C4_POLY, C4_VARS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    C4,
    C32,
    C222,
}

impl CaseId {
    pub fn num_params(self) -> usize {
        match self {
            CaseId::C4 => 2,
            CaseId::C32 => 3,
            CaseId::C222 => 4,
        }
    }

    pub fn poly(self) -> &'static MPoly<Rational> {
        match self {
            CaseId::C4 => &C4_POLY,
            CaseId::C32 => &C32_POLY,
            CaseId::C222 => &C222_POLY,
        }
    }

    pub fn vars(self) -> &'static [&'static str] {
        match self {
            CaseId::C4 => &C4_VARS,
            CaseId::C32 => &C32_VARS,
            CaseId::C222 => &C222_VARS,
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C4" => Ok(CaseId::C4),
            "C32" => Ok(CaseId::C32),
            "C222" => Ok(CaseId::C222),
            _ => Err(Error::Parse(format!("unknown case `{s}` (expected C4, C32 or C222)"))),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Rational parameters and the three squared angles `(x, y, z)` of one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AngleConfig {
    pub case_id: CaseId,
    #[serde(serialize_with = "crate::ser::rats")]
    pub params: Vec<Rational>,
    pub roots: [RootOfUnity; 3],
}

impl AngleConfig {
    /// Checks the non-degeneracy conditions of the case.
    pub fn new(case_id: CaseId, params: Vec<Rational>, roots: [RootOfUnity; 3]) -> Result<AngleConfig> {
        let cfg = AngleConfig { case_id, params, roots };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds without the distinctness checks (used for degenerate family members).
    pub fn unchecked(case_id: CaseId, params: Vec<Rational>, roots: [RootOfUnity; 3]) -> AngleConfig {
        AngleConfig { case_id, params, roots }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(format!("{}: {m}", self.case_id)));
        if self.params.len() != self.case_id.num_params() {
            return bad("wrong number of parameters");
        }
        if self.params.iter().any(|p| p.is_zero()) {
            return bad("parameters must be nonzero");
        }
        for i in 0..self.params.len() {
            for j in 0..i {
                if self.params[i] == self.params[j] {
                    return bad("parameters must be distinct");
                }
            }
        }
        if self.roots.iter().any(|r| r.is_one()) {
            return bad("roots must differ from 1");
        }
        let [x, y, z] = self.roots;
        match self.case_id {
            CaseId::C4 if x == y || y == z || x == z => bad("roots must be distinct"),
            CaseId::C32 if x == y => bad("x and y must differ"),
            _ => Ok(()),
        }
    }

    pub fn param(&self, i: usize) -> &Rational {
        &self.params[i]
    }

    pub fn common_order(&self) -> u64 {
        self.roots.iter().fold(1, |acc, r| lcm(acc, r.order()))
    }

    /// Reads `{"caseId": "C4", "params": ["2", 1], "roots": ["1/7", {"num": 1, "den": 2}, ...]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<AngleConfig> {
        let bad = |m: &str| Error::Parse(format!("configuration JSON: {m}"));
        let case_id: CaseId = v["caseId"].as_str().ok_or_else(|| bad("caseId"))?.parse()?;
        let params = v["params"]
            .as_array()
            .ok_or_else(|| bad("params"))?
            .iter()
            .map(|p| match p {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(bad("parameter")),
            })
            .collect::<Result<Vec<_>>>()?;
        let roots: Vec<RootOfUnity> = v["roots"]
            .as_array()
            .ok_or_else(|| bad("roots"))?
            .iter()
            .map(|r| match r {
                serde_json::Value::String(s) => s.parse(),
                other => serde_json::from_value(other.clone()).map_err(|e| bad(&e.to_string())),
            })
            .collect::<Result<_>>()?;
        let roots: [RootOfUnity; 3] = roots.try_into().map_err(|_| bad("need three roots"))?;
        AngleConfig::new(case_id, params, roots)
    }

    /// Complex conjugate configuration (every root inverted).
    pub fn conjugate(&self) -> AngleConfig {
        AngleConfig { case_id: self.case_id, params: self.params.clone(), roots: self.roots.map(|r| r.inv()) }
    }
}

/// Evaluates a polynomial at rational parameters and root-of-unity values, exactly.
pub fn eval_at_roots(p: &MPoly<Rational>, params: &[(&str, Rational)], roots: &[(&str, RootOfUnity)]) -> Result<Cyclo> {
    let vars = p.vars();
    let pidx: Vec<(usize, &Rational)> = params
        .iter()
        .map(|(n, v)| Ok((vars.iter().position(|w| w == n).ok_or_else(|| Error::UnboundVariable(n.to_string()))?, v)))
        .collect::<Result<_>>()?;
    let ridx: Vec<(usize, RootOfUnity)> = roots
        .iter()
        .map(|(n, v)| Ok((vars.iter().position(|w| w == n).ok_or_else(|| Error::UnboundVariable(n.to_string()))?, *v)))
        .collect::<Result<_>>()?;
    if pidx.len() + ridx.len() != vars.len() {
        let bound: Vec<&str> = params.iter().map(|p| p.0).chain(roots.iter().map(|r| r.0)).collect();
        let missing = vars.iter().find(|v| !bound.contains(v)).unwrap();
        return Err(Error::UnboundVariable(missing.to_string()));
    }
    let n = ridx.iter().fold(1, |acc, (_, r)| lcm(acc, r.order()));
    let mut acc: HashMap<i64, Rational> = HashMap::new();
    for (e, c) in p.terms() {
        let mut coeff = c.clone();
        for (i, v) in &pidx {
            coeff *= pow_rat(v, e[*i])?;
        }
        let k: i64 = ridx.iter().map(|(i, r)| e[*i] as i64 * r.exponent_in(n) as i64).sum();
        *acc.entry(k.rem_euclid(n as i64)).or_insert_with(Rational::zero) += coeff;
    }
    let mut terms: Vec<(i64, Rational)> = acc.into_iter().collect();
    terms.sort();
    Ok(Cyclo::from_exponents(n, &terms))
}

fn pow_rat(v: &Rational, e: i32) -> Result<Rational> {
    if e < 0 && v.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(if e >= 0 { num_traits::pow(v.clone(), e as usize) } else { num_traits::pow(v.recip(), (-e) as usize) })
}

/// Value of the case polynomial; zero iff the two configuration equations are compatible.
pub fn eliminant(cfg: &AngleConfig) -> Result<Cyclo> {
    let vars = cfg.case_id.vars();
    let np = cfg.params.len();
    let params: Vec<(&str, Rational)> = vars[..np].iter().copied().zip(cfg.params.iter().cloned()).collect();
    let roots: Vec<(&str, RootOfUnity)> = vars[np..].iter().copied().zip(cfg.roots).collect();
    eval_at_roots(cfg.case_id.poly(), &params, &roots)
}

/// A value of τ: an explicit cyclotomic number, or a root of `c2 τ² + c1 τ + c0`
/// lying on the line of squared argument `arg_sq` (so that `τ̄ = τ / arg_sq`).
#[derive(Debug, Clone, PartialEq)]
pub enum TauValue {
    Explicit(Cyclo),
    Quadratic { coeffs: [Cyclo; 3], arg_sq: RootOfUnity, branch: usize },
}

impl TauValue {
    pub fn explicit(&self) -> Option<&Cyclo> {
        match self {
            TauValue::Explicit(t) => Some(t),
            _ => None,
        }
    }

    /// Both roots of the quadratic (only the first entry for explicit values).
    pub fn roots(&self, bits: u32) -> Vec<ComplexApprox> {
        match self {
            TauValue::Explicit(t) => vec![t.embed(bits)],
            TauValue::Quadratic { coeffs, .. } => {
                let lead = coeffs[0].inv().expect("nonzero leading coefficient");
                quadratic_roots(&(&coeffs[1] * &lead), &(&coeffs[2] * &lead), bits).to_vec()
            }
        }
    }

    pub fn embed(&self, bits: u32) -> ComplexApprox {
        match self {
            TauValue::Explicit(t) => t.embed(bits),
            TauValue::Quadratic { branch, .. } => self.roots(bits).swap_remove(*branch),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let z = self.embed(80);
        match self {
            TauValue::Explicit(t) => serde_json::json!({
                "kind": "explicitCyclo", "value": serde_json::to_value(t).unwrap(), "approx": [z.re(), z.im()]
            }),
            TauValue::Quadratic { coeffs, arg_sq, branch } => serde_json::json!({
                "kind": "quadraticRoot",
                "coeffs": coeffs.iter().map(|c| serde_json::to_value(c).unwrap()).collect::<Vec<_>>(),
                "argSq": arg_sq, "branch": branch, "approx": [z.re(), z.im()]
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TauValue> {
        let bad = || Error::Parse("tau JSON".into());
        if v.get("order").is_some() {
            return Ok(TauValue::Explicit(serde_json::from_value(v.clone()).map_err(|_| bad())?));
        }
        match v["kind"].as_str() {
            Some("explicitCyclo") => Ok(TauValue::Explicit(serde_json::from_value(v["value"].clone()).map_err(|_| bad())?)),
            Some("quadraticRoot") => {
                let cs: Vec<Cyclo> = serde_json::from_value(v["coeffs"].clone()).map_err(|_| bad())?;
                let coeffs: [Cyclo; 3] = cs.try_into().map_err(|_| bad())?;
                let arg_sq = serde_json::from_value(v["argSq"].clone()).map_err(|_| bad())?;
                Ok(TauValue::Quadratic { coeffs, arg_sq, branch: v["branch"].as_u64().unwrap_or(0) as usize })
            }
            _ => Err(bad()),
        }
    }
}

/// Builds a quadratic τ, choosing the branch in the upper half plane (smaller modulus on ties).
pub fn quadratic_tau(coeffs: [Cyclo; 3], arg_sq: RootOfUnity) -> TauValue {
    let mut t = TauValue::Quadratic { coeffs, arg_sq, branch: 0 };
    let roots = t.roots(80);
    let pick = (0..2)
        .filter(|&i| roots[i].im() > 0.0)
        .min_by(|&i, &j| roots[i].abs().partial_cmp(&roots[j].abs()).unwrap_or(Ordering::Equal))
        .unwrap_or(0);
    if let TauValue::Quadratic { branch, .. } = &mut t {
        *branch = pick;
    }
    t
}

fn rc(r: &Rational) -> Cyclo {
    Cyclo::from_rational(r)
}

/// Coefficients `(A, B, C)` of the bilinear curve `a0 b0 A + a0 b1 B + a1 b0 C + a1 b1 = 0`
/// of angles `(a0 τ + a1, b0 τ + b1)` with squared argument `mu_sq`.
pub fn angle_coeffs_abc(tau: &Cyclo, mu_sq: &RootOfUnity) -> Result<(Cyclo, Cyclo, Cyclo)> {
    if mu_sq.is_one() {
        return Err(Error::Precondition("mu^2 must differ from 1".into()));
    }
    if tau.is_real() {
        return Err(Error::Precondition("tau must not be real".into()));
    }
    let m = mu_sq.to_cyclo();
    let tb = tau.conj();
    let d = (&m - &Cyclo::one()).inv()?;
    let a = tau * &tb;
    let b = &(&(&m * tau) - &tb) * &d;
    let c = &(&(&m * &tb) - tau) * &d;
    Ok((a, b, c))
}

/// `τ = a x0 (xj - 1) / (x0 - xj)` from two members `τ`, `τ + a` of a tuple containing 1.
pub fn tau_from_tuple(a: &Rational, x0: &RootOfUnity, xj: &RootOfUnity) -> Result<Cyclo> {
    if a.is_zero() || x0 == xj || x0.is_one() || xj.is_one() {
        return Err(Error::Precondition("need a != 0, x0 != xj and both roots != 1".into()));
    }
    let (x0, xj) = (x0.to_cyclo(), xj.to_cyclo());
    let num = (&x0 * &(&xj - &Cyclo::one())).scale(a);
    let tau = num.div(&(&x0 - &xj))?;
    debug_assert!(!tau.is_real());
    Ok(tau)
}

/// `[c2, c1, c0]` of `τ²(y-1) + τ[b0(y-x0) + bj(x0 y - 1)] + b0 bj x0 (y-1)`.
pub fn pair_quadratic(b0: &Rational, bj: &Rational, x0: &RootOfUnity, yj: &RootOfUnity) -> Result<[Cyclo; 3]> {
    if b0 == bj || b0.is_zero() || bj.is_zero() || yj.is_one() {
        return Err(Error::Precondition("need b0 != bj, both nonzero, y != 1".into()));
    }
    let (x, y) = (x0.to_cyclo(), yj.to_cyclo());
    let ym1 = &y - &Cyclo::one();
    let c1 = &(&y - &x).scale(b0) + &(&(&x * &y) - &Cyclo::one()).scale(bj);
    let c0 = (&x * &ym1).scale(&(b0 * bj));
    Ok([ym1, c1, c0])
}

pub fn discriminant(q: &[Cyclo; 3]) -> Cyclo {
    &(&q[1] * &q[1]) - &(&q[0] * &q[2]).scale_int(4)
}

/// τ with `Im τ > 0`; when the raw value lies below the axis the whole configuration
/// is conjugated and `conjugated` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovered {
    pub tau: Cyclo,
    pub cfg: AngleConfig,
    pub conjugated: bool,
}

pub fn tau_recover(cfg: &AngleConfig) -> Result<Recovered> {
    if !eliminant(cfg)?.is_zero() {
        return Err(Error::NotASolution);
    }
    let raw = raw_tau(cfg)?;
    Ok(if raw.im_sign() == Ordering::Less {
        Recovered { tau: raw.conj(), cfg: cfg.conjugate(), conjugated: true }
    } else {
        Recovered { tau: raw, cfg: cfg.clone(), conjugated: false }
    })
}

fn raw_tau(cfg: &AngleConfig) -> Result<Cyclo> {
    let [x, y, z] = cfg.roots.map(|r| r.to_cyclo());
    let one = Cyclo::one();
    match cfg.case_id {
        CaseId::C4 | CaseId::C32 => tau_from_tuple(&cfg.params[0], &cfg.roots[0], &cfg.roots[1]),
        CaseId::C222 => {
            let p = &cfg.params;
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            if a * b == c * d {
                return Err(Error::ProportionalBranch);
            }
            let (ym1, zm1) = (&y - &one, &z - &one);
            let num = (&(&x * &ym1) * &zm1).scale(&(c * d - a * b));
            let den = &(&(&(&y - &x) * &zm1).scale(a) + &(&(&(&x * &y) - &one) * &zm1).scale(b))
                - &(&(&(&z - &x) * &ym1).scale(c) + &(&(&(&x * &z) - &one) * &ym1).scale(d));
            num.div(&den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ProportionalStatus {
    UniqueZero,
    Proportional,
}

#[derive(Debug, Clone)]
pub struct ProportionalReport {
    pub status: ProportionalStatus,
    pub quadratic: Option<TauValue>,
    /// The four-cosine relation evaluated at square roots of the angles vanishes.
    pub cosine_check: bool,
    /// The same relation before taking square roots.
    pub unit_equation_check: bool,
}

/// The `ab = cd` sub-case of three disjoint angles.
pub fn proportional_branch(cfg: &AngleConfig) -> Result<ProportionalReport> {
    if cfg.case_id != CaseId::C222 {
        return Err(Error::Precondition("proportional branch needs a C222 configuration".into()));
    }
    let p = &cfg.params;
    let (a, b, c, _) = (&p[0], &p[1], &p[2], &p[3]);
    if a * b != &p[2] * &p[3] {
        return Err(Error::Precondition("needs ab = cd".into()));
    }
    let [x, y, z] = cfg.roots;
    let q1 = pair_quadratic(a, b, &x, &y)?;
    let q2 = pair_quadratic(c, &p[3], &x, &z)?;
    let proportional = (0..3).all(|i| (0..i).all(|j| (&(&q1[i] * &q2[j]) - &(&q1[j] * &q2[i])).is_zero()));

    let (ac, bc) = (a - c, b - c);
    let unit = {
        let terms: Vec<(Rational, [i64; 3])> = vec![
            (-(b * &ac), [0, 0, 0]),
            (c * &ac, [1, 0, 0]),
            (a * &bc, [0, 1, 0]),
            (-(c * &bc), [1, 1, 0]),
            (-(c * &bc), [0, 0, 1]),
            (a * &bc, [1, 0, 1]),
            (c * &ac, [0, 1, 1]),
            (-(b * &ac), [1, 1, 1]),
        ];
        sum_monomials(&terms, &[x, y, z])
    };
    // square roots θ, μ, η of x, y, z
    let half = |w: RootOfUnity| RootOfUnity::of(w.num() as i64, 2 * w.den());
    let (th, mu, eta) = (half(x), half(y), half(z));
    let re = |k: [i64; 3]| -> Cyclo {
        let w = th.pow(k[0]).mul(&mu.pow(k[1])).mul(&eta.pow(k[2]));
        w.to_cyclo().re()
    };
    let cosine = &(&(&re([1, 1, 1]).scale(&(b * &ac)) - &re([-1, 1, 1]).scale(&(c * &ac)))
        - &re([1, -1, 1]).scale(&(a * &bc)))
        + &re([1, 1, -1]).scale(&(c * &bc));
    Ok(ProportionalReport {
        status: if proportional { ProportionalStatus::Proportional } else { ProportionalStatus::UniqueZero },
        quadratic: proportional.then(|| quadratic_tau(q1, x)),
        cosine_check: cosine.is_zero(),
        unit_equation_check: unit.is_zero(),
    })
}

fn sum_monomials(terms: &[(Rational, [i64; 3])], roots: &[RootOfUnity; 3]) -> Cyclo {
    let n = roots.iter().fold(1, |acc, r| lcm(acc, r.order()));
    let t: Vec<(i64, Rational)> = terms
        .iter()
        .map(|(c, e)| ((0..3).map(|i| e[i] * roots[i].exponent_in(n) as i64).sum(), c.clone()))
        .collect();
    Cyclo::from_exponents(n, &t)
}

/// One end of an angle: the vector `τ + b`, or the vector 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Finite(Rational),
    Infinity,
}

impl FromStr for Slot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Slot::Infinity),
            t => Ok(Slot::Finite(parse_rational(t)?)),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Finite(r) => write!(f, "{r}"),
            Slot::Infinity => write!(f, "inf"),
        }
    }
}

/// Does the angle from `v0` to `v1` have squared argument `mu_sq`?
/// Checks `mu_sq · v0 · v̄1 = v̄0 · v1` exactly (modulo the quadratic for quadratic τ).
pub fn verify_angle(tau: &TauValue, b0: &Slot, b1: &Slot, mu_sq: &RootOfUnity) -> Result<bool> {
    if b0 == b1 {
        return Err(Error::Precondition("the two vectors are proportional".into()));
    }
    let m = mu_sq.to_cyclo();
    match tau {
        TauValue::Explicit(t) => {
            let v = |s: &Slot| match s {
                Slot::Finite(b) => t + &rc(b),
                Slot::Infinity => Cyclo::one(),
            };
            let (v0, v1) = (v(b0), v(b1));
            Ok((&(&m * &v0) * &v1.conj() - &v0.conj() * &v1).is_zero())
        }
        TauValue::Quadratic { coeffs, arg_sq, .. } => {
            // polynomials in τ, lowest degree first; τ̄ = τ / arg_sq
            let xinv = arg_sq.inv().to_cyclo();
            let v = |s: &Slot, bar: bool| -> Vec<Cyclo> {
                match s {
                    Slot::Finite(b) => vec![rc(b), if bar { xinv.clone() } else { Cyclo::one() }],
                    Slot::Infinity => vec![Cyclo::one()],
                }
            };
            let lhs = poly_mul(&poly_mul(&[m], &v(b0, false)), &v(b1, true));
            let rhs = poly_mul(&v(b0, true), &v(b1, false));
            let mut diff = vec![Cyclo::zero(); 3];
            for (i, c) in lhs.iter().enumerate() {
                diff[i] = &diff[i] + c;
            }
            for (i, c) in rhs.iter().enumerate() {
                diff[i] = &diff[i] - c;
            }
            // reduce modulo c2 τ² + c1 τ + c0
            let k = diff[2].div(&coeffs[0])?;
            let r1 = &diff[1] - &(&k * &coeffs[1]);
            let r0 = &diff[0] - &(&k * &coeffs[2]);
            Ok(r1.is_zero() && r0.is_zero())
        }
    }
}

fn poly_mul(p: &[Cyclo], q: &[Cyclo]) -> Vec<Cyclo> {
    let mut out = vec![Cyclo::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

/// Squared argument `v̄0 v1 / (v0 v̄1)` of the angle from `v0` to `v1`, when it is a root of unity.
pub fn squared_argument(v0: &Cyclo, v1: &Cyclo) -> Option<RootOfUnity> {
    let q = (&v0.conj() * v1).div(&(v0 * &v1.conj())).ok()?;
    let n = lcm(q.order(), 2);
    RootOfUnity::all_of_order_dividing(n).into_iter().find(|r| r.to_cyclo() == q)
}

/// Squared root of unity for an amplitude `num/den · π`.
pub fn amplitude_to_root(num: i64, den: u64) -> RootOfUnity {
    RootOfUnity::of(num, den)
}

/// Amplitude in `[0, 1)` (as a fraction of π) of a squared argument.
pub fn root_to_amplitude(r: &RootOfUnity) -> Rational {
    Rational::new((r.num() as i64).into(), (r.den() as i64).into())
}

/// The three angles claimed by a configuration, as `(slot0, slot1, squared angle)`.
pub fn claimed_angles(cfg: &AngleConfig) -> Vec<(Slot, Slot, RootOfUnity)> {
    let p = &cfg.params;
    let [x, y, z] = cfg.roots;
    let f = |r: &Rational| Slot::Finite(r.clone());
    let zero = Slot::Finite(Rational::zero());
    match cfg.case_id {
        CaseId::C4 => vec![
            (Slot::Infinity, zero.clone(), x),
            (Slot::Infinity, f(&p[0]), y),
            (Slot::Infinity, f(&p[1]), z),
            (zero.clone(), f(&p[0]), y.div(&x)),
            (zero, f(&p[1]), z.div(&x)),
            (f(&p[0]), f(&p[1]), z.div(&y)),
        ],
        CaseId::C32 => vec![
            (Slot::Infinity, zero.clone(), x),
            (Slot::Infinity, f(&p[0]), y),
            (zero, f(&p[0]), y.div(&x)),
            (f(&p[1]), f(&p[2]), z),
        ],
        CaseId::C222 => vec![(Slot::Infinity, zero, x), (f(&p[0]), f(&p[1]), y), (f(&p[2]), f(&p[3]), z)],
    }
}

/// The relabelling of a three-pair configuration that makes `(τ+a, τ+b)` the base pair:
/// `τ' = (τ+a)/(τ+b)`.
pub fn c222_permute(cfg: &AngleConfig) -> Result<AngleConfig> {
    let p = &cfg.params;
    let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
    if c == b || d == b {
        return Err(Error::Precondition("c and d must differ from b".into()));
    }
    let [x, y, z] = cfg.roots;
    Ok(AngleConfig::unchecked(
        CaseId::C222,
        vec![-Rational::one(), -(a / b), (a - c) / (c - b), (a - d) / (d - b)],
        [y.inv(), x, z],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly, rat};

    fn ru(k: i64, n: u64) -> RootOfUnity {
        RootOfUnity::of(k, n)
    }

    fn tau1() -> Cyclo {
        Cyclo::from_exponents(12, &[(3, int(-1)), (2, int(1)), (1, int(1)), (0, int(-1))])
    }

    #[test]
    fn abc_coefficients() {
        let i = Cyclo::zeta(4);
        let (a, b, c) = angle_coeffs_abc(&i, &RootOfUnity::minus_one()).unwrap();
        assert!(a.is_one() && b.is_zero() && c.is_zero());
        let (_, _, c) = angle_coeffs_abc(&Cyclo::zeta(3), &ru(1, 3)).unwrap();
        assert!(!c.is_zero());
        let z5 = Cyclo::zeta(5);
        let (a, b, c) = angle_coeffs_abc(&z5, &ru(1, 5)).unwrap();
        assert_ne!(a, &b * &c);
        assert!(angle_coeffs_abc(&Cyclo::from_int(2), &ru(1, 4)).is_err());
        assert!(angle_coeffs_abc(&i, &RootOfUnity::one()).is_err());
    }

    #[test]
    fn tau_from_tuples() {
        let th = ru(1, 7);
        let t = tau_from_tuple(&int(1), &th.pow(2), &th).unwrap();
        assert_eq!(t, th.to_cyclo());
        let t = tau_from_tuple(&int(1), &ru(1, 3), &ru(2, 3)).unwrap();
        assert_eq!(t, Cyclo::zeta_pow(3, 2));
        let t = tau_from_tuple(&int(1), &ru(3, 12), &ru(1, 12)).unwrap();
        assert_eq!(t, tau1());
    }

    #[test]
    fn pair_quadratic_examples() {
        // y = x = -1, (b0, bj) = (1, -1): -2τ² - 2, roots ±i
        let q = pair_quadratic(&int(1), &int(-1), &ru(1, 2), &ru(1, 2)).unwrap();
        assert_eq!(q[0], Cyclo::from_int(-2));
        assert!(q[1].is_zero());
        assert_eq!(q[2], Cyclo::from_int(-2));
        let q = pair_quadratic(&int(12), &int(2), &ru(3, 5), &ru(3, 10)).unwrap();
        assert!(q.iter().all(|c| 10 % c.order() == 0));
        let q = pair_quadratic(&int(2), &int(3), &ru(1, 4), &ru(1, 4)).unwrap();
        assert!(!discriminant(&q).is_zero());
    }

    #[test]
    fn eliminant_examples() {
        let th = ru(1, 5);
        let cfg = AngleConfig::new(CaseId::C4, vec![int(1), int(-1)], [th.pow(2), th, th.mul(&RootOfUnity::minus_one())]).unwrap();
        assert!(eliminant(&cfg).unwrap().is_zero());
        let cfg = AngleConfig::new(CaseId::C4, vec![int(1), int(-1)], [ru(3, 12), ru(1, 12), ru(10, 12)]).unwrap();
        assert!(eliminant(&cfg).unwrap().is_zero());
        let m1 = RootOfUnity::minus_one();
        let cfg = AngleConfig::new(CaseId::C222, vec![int(1), int(2), int(3), int(4)], [m1, m1, m1]).unwrap();
        assert_eq!(eliminant(&cfg).unwrap(), Cyclo::from_int(-1600));
    }

    #[test]
    fn recover_dodecagonal() {
        let cfg = AngleConfig::new(CaseId::C4, vec![int(1), int(-1)], [ru(3, 12), ru(1, 12), ru(10, 12)]).unwrap();
        let r = tau_recover(&cfg).unwrap();
        assert_eq!(r.tau, tau1());
        assert!(!r.conjugated);
        let z = r.tau.embed(60);
        assert!((z.re() - 0.3660254037844386).abs() < 1e-12 && (z.im() - z.re()).abs() < 1e-12);
        let t = TauValue::Explicit(r.tau.clone());
        for (s0, s1, m) in claimed_angles(&r.cfg) {
            assert!(verify_angle(&t, &s0, &s1, &m).unwrap(), "{s0} {s1} {m}");
        }
        // perturbed configuration is not a solution
        let bad = AngleConfig::new(CaseId::C4, vec![int(1), int(-2)], [ru(3, 12), ru(1, 12), ru(10, 12)]).unwrap();
        assert!(matches!(tau_recover(&bad), Err(Error::NotASolution)));
    }

    #[test]
    fn verify_angle_examples() {
        let i = TauValue::Explicit(Cyclo::zeta(4));
        assert!(verify_angle(&i, &Slot::Infinity, &Slot::Finite(int(0)), &RootOfUnity::minus_one()).unwrap());
        let t1 = TauValue::Explicit(tau1());
        assert!(verify_angle(&t1, &Slot::Finite(int(1)), &Slot::Finite(int(-1)), &ru(9, 12)).unwrap());
        for m in RootOfUnity::all_of_order_dividing(24) {
            if 12 % m.order() == 0 || m.order() <= 12 {
                assert!(!verify_angle(&t1, &Slot::Finite(int(2)), &Slot::Finite(int(-1)), &m).unwrap());
            }
        }
    }

    /// τ = i with the pairs (2, 1/3) and (3, 1/2), both at 45°.
    fn gaussian_c222() -> AngleConfig {
        let tau = Cyclo::zeta(4);
        let (a, b, c, d) = (int(2), rat(1, 3), int(3), rat(1, 2));
        let y = angle_root(&tau, &a, &b);
        let z = angle_root(&tau, &c, &d);
        AngleConfig::new(CaseId::C222, vec![a, b, c, d], [RootOfUnity::minus_one(), y, z]).unwrap()
    }

    #[test]
    fn c222_pair_formula_solves_both_quadratics() {
        let cfg = gaussian_c222();
        assert_eq!(cfg.roots[1], ru(1, 4));
        assert!(eliminant(&cfg).unwrap().is_zero());
        let r = tau_recover(&cfg).unwrap();
        assert_eq!(r.tau, Cyclo::zeta(4));
        let t = TauValue::Explicit(r.tau.clone());
        for (s0, s1, m) in claimed_angles(&r.cfg) {
            assert!(verify_angle(&t, &s0, &s1, &m).unwrap());
        }
        for (i, q) in [pair_quadratic(&cfg.params[0], &cfg.params[1], &cfg.roots[0], &cfg.roots[1]).unwrap(),
                       pair_quadratic(&cfg.params[2], &cfg.params[3], &cfg.roots[0], &cfg.roots[2]).unwrap()].iter().enumerate() {
            let v = &(&(&q[0] * &r.tau) * &r.tau) + &(&(&q[1] * &r.tau) + &q[2]);
            assert!(v.is_zero(), "quadratic {i}");
        }
    }

    #[test]
    fn c222_relabelling() {
        let cfg = gaussian_c222();
        let p = c222_permute(&cfg).unwrap();
        assert!(eliminant(&p).unwrap().is_zero());
        let t = tau_recover(&p).unwrap();
        let orig = Cyclo::zeta(4);
        let expect = (&orig + &Cyclo::from_int(2)).div(&(&orig + &Cyclo::from_rational(&rat(1, 3)))).unwrap();
        assert!(t.tau == expect || t.tau == expect.conj());
        // the unconjugated ordering (y, x, z) only holds after conjugation: it is (y, x⁻¹, z⁻¹) in disguise
        let mut naive = p.clone();
        naive.roots = [cfg.roots[1], cfg.roots[0], cfg.roots[2]];
        assert!(!eliminant(&naive).unwrap().is_zero());
    }

    /// Squared argument from `τ + b0` to `τ + b1`, when it is a root of unity of order ≤ 24.
    fn angle_root(tau: &Cyclo, b0: &Rational, b1: &Rational) -> RootOfUnity {
        let v0 = tau + &Cyclo::from_rational(b0);
        let v1 = tau + &Cyclo::from_rational(b1);
        let q = (&v0.conj() * &v1).div(&(&v0 * &v1.conj())).unwrap();
        RootOfUnity::all_of_order_dividing(24).into_iter().find(|r| r.to_cyclo() == q).expect("rational angle")
    }

    #[test]
    fn proportional_needs_ab_eq_cd() {
        let m1 = RootOfUnity::minus_one();
        let cfg = AngleConfig::new(CaseId::C222, vec![int(1), int(2), int(3), int(4)], [m1, m1, m1]).unwrap();
        assert!(proportional_branch(&cfg).is_err());
        assert!(matches!(tau_recover(&AngleConfig::unchecked(CaseId::C222, vec![int(2), int(3), int(1), int(6)], [ru(1, 4), ru(1, 4), ru(1, 4)])), Err(_)));
    }

    /// `t = k·s` for some nonzero rational `k`.
    fn proportional(t: &MPoly<Rational>, s: &MPoly<Rational>) -> Option<Rational> {
        let (e, c) = s.terms().next()?;
        let k = t.coeff(e) / c;
        (!k.is_zero() && t.sub(&s.scale(&k)).is_zero()).then_some(k)
    }

    #[test]
    fn c4_matches_two_tuple_formulas() {
        let v = &C4_VARS;
        // a x(y-1)(x-z) = b x(z-1)(x-y), divided by x
        let derived = parse_poly("a (y - 1) (x - z) - b (z - 1) (x - y)", v).unwrap();
        assert!(proportional(&C4_POLY, &derived).is_some());
    }

    #[test]
    fn c32_matches_elimination() {
        let q = parse_poly(
            "(z - 1) a^2 x (y - 1)^2 + a (y - 1) (x - y) (b (z - x) + c (x z - 1)) + b c (z - 1) (x - y)^2",
            &C32_VARS,
        )
        .unwrap();
        assert!(proportional(&C32_POLY, &q).is_some());
    }

    #[test]
    fn c222_table_matches_resultant_of_pair_quadratics() {
        let v = &C222_VARS;
        let p = |s: &str| parse_poly(s, v).unwrap();
        // pair quadratics with (y-1), (z-1) cleared: A1' = (y-1)A1, B1' = (z-1)B1
        let a1 = p("(y - x) a + (x y - 1) b");
        let a2 = p("x a b");
        let b1 = p("(z - x) c + (x z - 1) d");
        let b2 = p("x c d");
        let (ym, zm) = (p("y - 1"), p("z - 1"));
        let (ym2, zm2) = (ym.pow(2), zm.pow(2));
        let yz = ym.mul(&zm);
        let t = b2.pow(2).mul(&ym2).mul(&zm2)
            .sub(&a1.mul(&b1).mul(&b2).mul(&yz))
            .add(&a1.pow(2).sub(&a2.mul(&ym2).scale(&int(2))).mul(&b2).mul(&zm2))
            .add(&a2.mul(&b1.pow(2)).mul(&ym2))
            .sub(&a1.mul(&a2).mul(&b1).mul(&yz))
            .add(&a2.pow(2).mul(&ym2).mul(&zm2));
        let xp = C222_POLY.mul(&p("x"));
        assert!(proportional(&t, &xp).is_some(), "table is not the eliminant");
    }

    #[test]
    fn c222_at_minus_one_is_square() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let m1 = RootOfUnity::minus_one();
        for _ in 0..100 {
            let ps: Vec<Rational> = (0..4).map(|_| rat(rng.gen_range(-30..30), rng.gen_range(1..9))).collect();
            let cfg = AngleConfig::unchecked(CaseId::C222, ps.clone(), [m1, m1, m1]);
            let d = &ps[0] * &ps[1] - &ps[2] * &ps[3];
            assert_eq!(eliminant(&cfg).unwrap(), Cyclo::from_rational(&(d.clone() * d * int(-16))));
        }
    }

    #[test]
    fn genus_five_proportional_branch() {
        let cfg = AngleConfig::new(CaseId::C222, vec![int(12), int(2), int(-8), int(-3)], [ru(6, 10), ru(3, 10), ru(9, 10)]).unwrap();
        assert!(eliminant(&cfg).unwrap().is_zero());
        assert!(matches!(tau_recover(&cfg), Err(Error::ProportionalBranch)));
        let rep = proportional_branch(&cfg).unwrap();
        assert_eq!(rep.status, ProportionalStatus::Proportional);
        assert!(rep.cosine_check && rep.unit_equation_check);
        let q = rep.quadratic.unwrap();
        let z = q.embed(80);
        let arg = 3.0 * std::f64::consts::PI / 5.0;
        assert!((z.abs() - 2.86807).abs() < 1e-5, "{}", z.abs());
        assert!((z.im().atan2(z.re()) - arg).abs() < 1e-9);
        for (s0, s1, m) in claimed_angles(&cfg) {
            assert!(verify_angle(&q, &s0, &s1, &m).unwrap());
        }
        assert!(!verify_angle(&q, &Slot::Infinity, &Slot::Finite(int(2)), &ru(1, 10)).unwrap());
    }
}
