//! Space-level questions about `V = ⟨1, τ⟩_ℚ`: normalization, CM detection and the
//! CM angle catalogs, the symmetry predicates, and the finite angle search for
//! non-CM spaces.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::arith::{divisors, is_squarefree, lcm, primes_upto};
use crate::algebra::linalg::{coordinate_rows, nullspace, q_rank, rank, Matrix};
use crate::algebra::rational::{rational_sqrt, squarefree_part};
use crate::algebra::{int, min_poly, Cyclo, Rational, RootOfUnity};
use crate::angles::{angle_coeffs_abc, root_to_amplitude, TauValue};
use crate::error::{Error, Result};

/// The generator of a space, up to homothety.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceTau {
    Value(TauValue),
    /// A transcendental τ; only the defining angle `(1, τ)` is known.
    Transcendental { arg_sq: Option<RootOfUnity> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceSpec {
    pub tau: SpaceTau,
    /// Set when τ was replaced by its conjugate to make `Im τ > 0`.
    pub conjugated: bool,
    pub provenance: String,
}

impl SpaceSpec {
    pub fn explicit(tau: Cyclo, provenance: &str) -> SpaceSpec {
        SpaceSpec { tau: SpaceTau::Value(TauValue::Explicit(tau)), conjugated: false, provenance: provenance.into() }
    }

    pub fn tau(&self) -> Option<&Cyclo> {
        match &self.tau {
            SpaceTau::Value(t) => t.explicit(),
            SpaceTau::Transcendental { .. } => None,
        }
    }
}

/// `⟨v1, v2⟩ ∼ ⟨1, v2/v1⟩`, with τ moved to the upper half plane.
pub fn normalize_space(v1: &Cyclo, v2: &Cyclo) -> Result<SpaceSpec> {
    let tau = v2.div(v1)?;
    if tau.is_real() {
        return Err(Error::Precondition("the two vectors are proportional over the reals".into()));
    }
    let conjugated = tau.im_sign() == std::cmp::Ordering::Less;
    let tau = if conjugated { tau.conj() } else { tau };
    Ok(SpaceSpec { tau: SpaceTau::Value(TauValue::Explicit(tau)), conjugated, provenance: "normalize".into() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmInfo {
    pub d: u64,
    pub catalog: Vec<Cyclo>,
}

/// `Some(d)` when τ is imaginary quadratic, generating `ℚ(√−d)`.
pub fn cm_discriminant(tau: &Cyclo) -> Option<u64> {
    let p = min_poly(tau);
    if p.len() != 3 {
        return None;
    }
    quadratic_d(&p[1], &p[0])
}

/// Squarefree `d` with `ℚ(√(p² − 4q)) = ℚ(√−d)`, when the discriminant is negative.
fn quadratic_d(p: &Rational, q: &Rational) -> Option<u64> {
    let disc = p * p - q * int(4);
    if !disc.is_negative() {
        return None;
    }
    let n = -(disc.numer() * disc.denom());
    squarefree_part(&n).to_u64()
}

pub fn is_cm(s: &SpaceSpec) -> Result<Option<CmInfo>> {
    let d = match &s.tau {
        SpaceTau::Transcendental { .. } => None,
        SpaceTau::Value(TauValue::Explicit(t)) => cm_discriminant(t),
        SpaceTau::Value(TauValue::Quadratic { coeffs, .. }) => {
            // only decidable here when the monic quadratic has rational coefficients
            let lead = coeffs[0].inv()?;
            match ((&coeffs[1] * &lead).to_rational(), (&coeffs[2] * &lead).to_rational()) {
                (Some(p), Some(q)) => quadratic_d(&p, &q),
                _ => None,
            }
        }
    };
    d.map(cm_catalog).transpose()
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 { 1 } else { -1 }
}

/// `√−d` with positive imaginary part, built from quadratic Gauss sums.
pub fn sqrt_neg(d: u64) -> Result<Cyclo> {
    if d == 0 || !is_squarefree(d) {
        return Err(Error::Precondition(format!("{d} is not a positive squarefree integer")));
    }
    let i = Cyclo::zeta(4);
    let mut acc = i.clone();
    let mut rest = d;
    for p in primes_upto(d) {
        if rest % p != 0 {
            continue;
        }
        rest /= p;
        let root = if p == 2 {
            &Cyclo::zeta(8) + &Cyclo::zeta_pow(8, 7)
        } else {
            let g = (1..p).fold(Cyclo::zero(), |s, a| &s + &Cyclo::zeta_pow(p, a as i64).scale_int(legendre(a, p)));
            if p % 4 == 1 { g } else { &(-i.clone()) * &g }
        };
        acc = acc.try_mul(&root)?;
    }
    if acc.im_sign() == std::cmp::Ordering::Less {
        acc = -acc;
    }
    debug_assert_eq!(&acc * &acc, Cyclo::from_int(-(d as i64)));
    Ok(acc)
}

/// Generators λ of the rational angles `(v, λv)` of `ℚ(√−d)`, up to equivalence.
pub fn cm_catalog(d: u64) -> Result<CmInfo> {
    let s = sqrt_neg(d)?;
    let one = Cyclo::one();
    let catalog = match d {
        1 => vec![s.clone(), &s + &one, &s - &one],
        3 => {
            let z = Cyclo::zeta(3);
            vec![s, z.clone(), &z - &one, &z + &one, &z + &Cyclo::from_int(2)]
        }
        _ => vec![s],
    };
    Ok(CmInfo { d, catalog })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Symmetry {
    pub self_conj_class: bool,
    pub hom_conj_class: bool,
    pub rectangular: bool,
    pub superrectangular: bool,
}

/// ℚ-relations `(α, β, γ)` with `α ττ̄ + β (τ + τ̄) + γ = 0`.
fn norm_trace_relations(tau: &Cyclo) -> Result<Matrix> {
    let tb = tau.conj();
    let (_, rows) = coordinate_rows(&[tau * &tb, tau + &tb, Cyclo::one()])?;
    let t: Matrix = (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    Ok(nullspace(&t, 3))
}

/// A pair of perpendicular vectors `(p τ + q, r τ + s)`, as coefficient pairs.
pub fn right_angle(tau: &Cyclo) -> Result<Option<([Rational; 2], [Rational; 2])>> {
    let rel = norm_trace_relations(tau)?;
    let z = Rational::zero;
    match rel.len() {
        0 => Ok(None),
        1 => {
            // α X² + 2β XY + γ Y² must split into distinct rational factors
            let (a, b, c) = (&rel[0][0], &rel[0][1], &rel[0][2]);
            let disc = b * b - a * c;
            let Some(s) = rational_sqrt(&disc).filter(|s| !s.is_zero()) else { return Ok(None) };
            if a.is_zero() {
                return Ok(Some(([z(), Rational::one()], [b * int(2), c.clone()])));
            }
            let t1 = (-b + &s) / a;
            let t2 = (-b - &s) / a;
            Ok(Some(([Rational::one(), -t1], [Rational::one(), -t2])))
        }
        _ => {
            // τ imaginary quadratic: 1 ⟂ τ − Re τ
            let re = (tau + &tau.conj()).to_rational().expect("rational trace") / int(2);
            Ok(Some(([z(), Rational::one()], [Rational::one(), -re])))
        }
    }
}

/// `⟨1, τ1⟩ ∼ ⟨1, τ2⟩`: `τ2 = (aτ1 + b)/(cτ1 + d)` for a rational matrix.
pub fn homothetic(t1: &Cyclo, t2: &Cyclo) -> Result<bool> {
    Ok(q_rank(&[Cyclo::one(), t1.clone(), t2.clone(), t1 * t2])? < 4)
}

/// Order `M` of the group of roots of unity in `ℚ(τ, τ̄)`.
pub fn roots_of_unity_order(tau: &Cyclo) -> Result<u64> {
    let deg = min_poly(tau).len() - 1;
    let tb = tau.conj();
    let mut gens = Vec::new();
    let mut pi = Cyclo::one();
    for _ in 0..deg {
        let mut pj = pi.clone();
        for _ in 0..deg {
            gens.push(pj.clone());
            pj = &pj * &tb;
        }
        pi = &pi * tau;
    }
    let (n, rows) = coordinate_rows(&gens)?;
    let r = rank(&rows);
    let l = lcm(n, 2);
    let mut best = 2;
    for m in divisors(l) {
        if m <= best {
            continue;
        }
        let z = Cyclo::zeta(m).lift(l)?.coords();
        let mut rows2 = rows.iter().map(|row| lift_row(row, n, l)).collect::<Result<Matrix>>()?;
        rows2.push(z);
        if rank(&rows2) == r {
            best = m;
        }
    }
    Ok(best)
}

fn lift_row(row: &[Rational], n: u64, l: u64) -> Result<Vec<Rational>> {
    Ok(Cyclo::from_coords(n, row)?.lift(l)?.coords())
}

pub fn symmetry_predicates(tau: &Cyclo) -> Result<Symmetry> {
    let tb = tau.conj();
    let hom_conj = q_rank(&[Cyclo::one(), tau.clone(), tb.clone(), tau * &tb])? < 4;
    let ra = right_angle(tau)?;
    let rectangular = ra.is_some();
    let superrectangular = match ra {
        None => false,
        Some((p, q)) => {
            let v = &tau.scale(&p[0]) + &Cyclo::from_rational(&p[1]);
            let u = &tau.scale(&q[0]) + &Cyclo::from_rational(&q[1]);
            let w = u.div(&v)?;
            let m = roots_of_unity_order(tau)?;
            RootOfUnity::all_of_order_dividing(m).into_iter().filter(|r| r.order() > 2).any(|r| {
                let c = r.to_cyclo();
                let k = (&c + &Cyclo::one()).div(&(&c - &Cyclo::one())).unwrap();
                (&w * &k).is_rational()
            })
        }
    };
    Ok(Symmetry { self_conj_class: rectangular, hom_conj_class: hom_conj, rectangular, superrectangular })
}

/// A rational angle `(a0 τ + a1, b0 τ + b1)` with squared argument `mu_sq`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AngleRecord {
    pub v0: [BigInt; 2],
    pub v1: [BigInt; 2],
    pub mu_sq: RootOfUnity,
}

impl AngleRecord {
    /// Primitive integer lines, smaller line first.
    pub fn canonical(v0: &[Rational; 2], v1: &[Rational; 2], mu_sq: RootOfUnity) -> AngleRecord {
        let (a, b) = (primitive(v0), primitive(v1));
        if a <= b {
            AngleRecord { v0: a, v1: b, mu_sq }
        } else {
            AngleRecord { v0: b, v1: a, mu_sq: mu_sq.inv() }
        }
    }

    pub fn amplitude(&self) -> Rational {
        root_to_amplitude(&self.mu_sq)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v = |l: &[BigInt; 2]| format!("{}τ{:+}", l[0], l[1]);
        serde_json::json!({
            "pair": [v(&self.v0), v(&self.v1)],
            "muSq": self.mu_sq,
            "amplitude": format!("{}π", self.amplitude()),
        })
    }
}

fn primitive(v: &[Rational; 2]) -> [BigInt; 2] {
    let den = v[0].denom().lcm(v[1].denom());
    let mut n = [v[0].numer() * (&den / v[0].denom()), v[1].numer() * (&den / v[1].denom())];
    let g = n[0].gcd(&n[1]);
    n = [&n[0] / &g, &n[1] / &g];
    if n[0].is_negative() || (n[0].is_zero() && n[1].is_negative()) {
        n = [-&n[0], -&n[1]];
    }
    n
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleSearch {
    /// Squared arguments for which every coefficient was rational (CM spaces).
    pub cm_infinite: Vec<RootOfUnity>,
    pub cm: Option<CmInfo>,
    pub angles: Vec<AngleRecord>,
}

/// All rational angles of `⟨1, τ⟩` with squared argument in `mu_sq_set`
/// (default: every root of unity of `ℚ(τ, τ̄)` other than 1).
pub fn find_rational_angles(s: &SpaceSpec, mu_sq_set: Option<&[RootOfUnity]>) -> Result<AngleSearch> {
    let tau = match &s.tau {
        SpaceTau::Transcendental { arg_sq } => {
            let angles = arg_sq
                .map(|x| AngleRecord::canonical(&[int(0), int(1)], &[int(1), int(0)], x))
                .into_iter()
                .collect();
            return Ok(AngleSearch { cm_infinite: vec![], cm: None, angles });
        }
        SpaceTau::Value(t) => t
            .explicit()
            .ok_or_else(|| Error::Precondition("angle search needs an explicit τ".into()))?,
    };
    let mus: Vec<RootOfUnity> = match mu_sq_set {
        Some(m) => m.to_vec(),
        None => RootOfUnity::all_of_order_dividing(roots_of_unity_order(tau)?),
    };
    let mut cm_infinite = Vec::new();
    let mut found = BTreeSet::new();
    for mu in mus.into_iter().filter(|m| !m.is_one()) {
        let (a, b, c) = angle_coeffs_abc(tau, &mu)?;
        if a.is_rational() && b.is_rational() && c.is_rational() {
            cm_infinite.push(mu);
            continue;
        }
        for (p, q) in curve_points(&a, &b, &c)? {
            found.insert(AngleRecord::canonical(&p, &q, mu));
        }
    }
    let cm = if cm_infinite.is_empty() { None } else { cm_discriminant(tau).map(cm_catalog).transpose()? };
    Ok(AngleSearch { cm_infinite, cm, angles: found.into_iter().collect() })
}

/// Rational points of `a0 b0 A + a0 b1 B + a1 b0 C + a1 b1 = 0` when the curve is not defined over ℚ.
fn curve_points(a: &Cyclo, b: &Cyclo, c: &Cyclo) -> Result<Vec<([Rational; 2], [Rational; 2])>> {
    let (_, rows) = coordinate_rows(&[a.clone(), b.clone(), c.clone(), Cyclo::one()])?;
    let sys: Matrix = (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    let ker = nullspace(&sys, 4);
    let segre = |w: &[Rational]| &w[0] * &w[3] - &w[1] * &w[2];
    let mut ws: Vec<Vec<Rational>> = Vec::new();
    match ker.len() {
        0 => {}
        1 => {
            if segre(&ker[0]).is_zero() {
                ws.push(ker[0].clone());
            }
        }
        2 => {
            let (v, u) = (&ker[0], &ker[1]);
            // Q(s, t) = segre(s v + t u) = qa s² + qb s t + qc t²
            let qa = segre(v);
            let qc = segre(u);
            let qb = &v[0] * &u[3] + &u[0] * &v[3] - &v[1] * &u[2] - &u[1] * &v[2];
            if qa.is_zero() && qb.is_zero() && qc.is_zero() {
                return Err(Error::Precondition("the angle curve is defined over ℚ".into()));
            }
            let comb = |s: &Rational, t: &Rational| -> Vec<Rational> { (0..4).map(|i| s * &v[i] + t * &u[i]).collect() };
            if qa.is_zero() {
                ws.push(comb(&int(1), &int(0)));
                if !qb.is_zero() {
                    ws.push(comb(&-qc.clone(), &qb));
                }
            } else if let Some(r) = rational_sqrt(&(&qb * &qb - &qa * &qc * int(4))) {
                for sg in [int(1), int(-1)] {
                    ws.push(comb(&((-&qb + &sg * &r) / (&qa * int(2))), &int(1)));
                }
            }
        }
        _ => return Err(Error::Precondition("the angle curve is defined over ℚ".into())),
    }
    Ok(ws.into_iter().filter_map(|w| factor_rank_one(&w)).collect())
}

/// `[[w0, w1], [w2, w3]] = a ⊗ b`.
fn factor_rank_one(w: &[Rational]) -> Option<([Rational; 2], [Rational; 2])> {
    let a = if !w[0].is_zero() || !w[2].is_zero() { [w[0].clone(), w[2].clone()] } else { [w[1].clone(), w[3].clone()] };
    let b = if !w[0].is_zero() || !w[1].is_zero() { [w[0].clone(), w[1].clone()] } else { [w[2].clone(), w[3].clone()] };
    if a.iter().all(Zero::is_zero) || &a[0] * &b[1] == &a[1] * &b[0] {
        return None;
    }
    Some((a, b))
}

/// Orders of the angles `μ` (not squared) in the Gaussian and Eisenstein spaces.
pub fn lattice_root_orders() -> Result<BTreeMap<&'static str, u64>> {
    let mut out = BTreeMap::new();
    out.insert("gaussian", 2 * roots_of_unity_order(&Cyclo::zeta(4))?);
    out.insert("eisenstein", 2 * roots_of_unity_order(&Cyclo::zeta(6))?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn tau1() -> Cyclo {
        Cyclo::from_exponents(12, &[(3, int(-1)), (2, int(1)), (1, int(1)), (0, int(-1))])
    }

    fn four_tuple_angles() -> BTreeSet<(Vec<BigInt>, Vec<BigInt>)> {
        let lines = [[int(0), int(1)], [int(1), int(0)], [int(1), int(1)], [int(1), int(-1)]];
        let mut out = BTreeSet::new();
        for i in 0..4 {
            for j in 0..i {
                let r = AngleRecord::canonical(&lines[j], &lines[i], RootOfUnity::one());
                out.insert((r.v0.to_vec(), r.v1.to_vec()));
            }
        }
        out
    }

    #[test]
    fn normalization() {
        let s = normalize_space(&Cyclo::one(), &Cyclo::zeta(4)).unwrap();
        assert_eq!(s.tau(), Some(&Cyclo::zeta(4)));
        assert!(!s.conjugated);
        let s = normalize_space(&Cyclo::from_int(2), &(&Cyclo::one() - &Cyclo::zeta(4))).unwrap();
        assert!(s.conjugated);
        assert_eq!(s.tau().unwrap(), &(&Cyclo::one() + &Cyclo::zeta(4)).scale(&rat(1, 2)));
        let z5 = Cyclo::zeta(5);
        let s = normalize_space(&(&Cyclo::one() + &z5), &(&z5 * &z5)).unwrap();
        assert_eq!(s.tau().unwrap().im_sign(), std::cmp::Ordering::Greater);
        assert!(normalize_space(&Cyclo::one(), &Cyclo::from_int(3)).is_err());
    }

    #[test]
    fn cm_detection() {
        assert_eq!(cm_discriminant(&Cyclo::zeta(4)), Some(1));
        assert_eq!(cm_discriminant(&Cyclo::zeta(3)), Some(3));
        assert_eq!(cm_discriminant(&Cyclo::zeta(5)), None);
        assert_eq!(cm_discriminant(&(&Cyclo::one() + &Cyclo::zeta(4).scale_int(2))), Some(1));
        for d in [1u64, 2, 3, 5, 6, 7, 10, 11, 15, 21, 30] {
            let s = sqrt_neg(d).unwrap();
            assert_eq!(&s * &s, Cyclo::from_int(-(d as i64)));
            assert_eq!(cm_discriminant(&(&s + &Cyclo::from_rational(&rat(1, 3)))), Some(d));
        }
        assert!(sqrt_neg(12).is_err());
    }

    #[test]
    fn catalogs() {
        assert_eq!(cm_catalog(2).unwrap().catalog.len(), 1);
        let c1 = cm_catalog(1).unwrap().catalog;
        assert_eq!(c1[0], Cyclo::zeta(4));
        assert_eq!(c1.len(), 3);
        assert_eq!(cm_catalog(3).unwrap().catalog.len(), 5);
        assert!(cm_catalog(4).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let s = symmetry_predicates(&Cyclo::zeta(5)).unwrap();
        assert!(s.self_conj_class && s.hom_conj_class && s.rectangular && s.superrectangular);
        let s = symmetry_predicates(&tau1()).unwrap();
        assert!(s.hom_conj_class && !s.superrectangular);
        // ⟨1, 1+2i⟩ = ℚ(i) contains the right triple 1, i, 1+i
        let s = symmetry_predicates(&(&Cyclo::one() + &Cyclo::zeta(4).scale_int(2))).unwrap();
        assert!(s.rectangular && s.superrectangular);
        // ℚ(√−2) has right angles but no rational triple through them
        let s = symmetry_predicates(&sqrt_neg(2).unwrap()).unwrap();
        assert!(s.rectangular && !s.superrectangular);
        // τ = ζ7 + ζ7³ satisfies ττ̄ + τ + τ̄ = 1, but 1 + 1 is not a square
        let t = &Cyclo::zeta(7) + &Cyclo::zeta_pow(7, 3);
        let s = symmetry_predicates(&t).unwrap();
        assert!(s.hom_conj_class && !s.rectangular && !s.superrectangular);
        let t = &Cyclo::zeta(7).scale_int(2) + &Cyclo::zeta_pow(7, 3);
        let s = symmetry_predicates(&t).unwrap();
        assert!(!s.hom_conj_class && !s.rectangular);
    }

    #[test]
    fn angle_search_type_four() {
        for tau in [Cyclo::zeta(5), tau1(), Cyclo::zeta(7)] {
            let res = find_rational_angles(&SpaceSpec::explicit(tau.clone(), "test"), None).unwrap();
            assert!(res.cm_infinite.is_empty());
            let got: BTreeSet<_> = res.angles.iter().map(|a| (a.v0.to_vec(), a.v1.to_vec())).collect();
            assert_eq!(got, four_tuple_angles(), "{tau:?}");
            assert_eq!(res.angles.len(), 6);
        }
    }

    #[test]
    fn angle_search_cm() {
        let res = find_rational_angles(&SpaceSpec::explicit(Cyclo::zeta(4), "test"), None).unwrap();
        assert_eq!(res.cm.as_ref().unwrap().d, 1);
        assert_eq!(res.cm_infinite.len(), 3);
        assert!(res.cm_infinite.iter().all(|m| 4 % m.order() == 0));
    }

    #[test]
    fn root_orders() {
        let m = lattice_root_orders().unwrap();
        assert_eq!(m["gaussian"], 8);
        assert_eq!(m["eisenstein"], 12);
        assert_eq!(roots_of_unity_order(&tau1()).unwrap(), 12);
        assert_eq!(roots_of_unity_order(&Cyclo::zeta(5)).unwrap(), 10);
        assert_eq!(roots_of_unity_order(&sqrt_neg(5).unwrap()).unwrap(), 2);
    }

    #[test]
    fn transcendental_space() {
        let s = SpaceSpec { tau: SpaceTau::Transcendental { arg_sq: Some(RootOfUnity::of(1, 3)) }, conjugated: false, provenance: "t".into() };
        assert_eq!(find_rational_angles(&s, None).unwrap().angles.len(), 1);
        assert!(is_cm(&s).unwrap().is_none());
    }
}
