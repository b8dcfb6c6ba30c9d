//! The surface of three-pair configurations with fixed angles: the resultant of two
//! monic quadratics, its substitution `E*`, the scaling identity with the table-built
//! eliminant, and the criterion for the surface to be defined over ℚ.

use std::collections::{BTreeMap, HashMap};

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::algebra::arith::lcm;
use crate::algebra::{rational_ratio, Coeff, Cyclo, MPoly, RatioOutcome, Rational, RootOfUnity};
use crate::data::{ABCD, C222_POLY};
use crate::error::{Error, Result};

/// Coefficients of `τ² + A1 τ + A2` and `τ² + B1 τ + B2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPair<C: Coeff> {
    pub a1: MPoly<C>,
    pub a2: MPoly<C>,
    pub b1: MPoly<C>,
    pub b2: MPoly<C>,
}

/// `B2² - A1 B1 B2 + (A1² - 2A2) B2 + A2 B1² - A1 A2 B1 + A2²`.
pub fn resultant_e<C: Coeff>(q: &QuadraticPair<C>) -> MPoly<C> {
    let QuadraticPair { a1, a2, b1, b2 } = q;
    let two = C::from_rational(&Rational::from_integer(2.into()));
    b2.mul(b2)
        .sub(&a1.mul(b1).mul(b2))
        .add(&a1.mul(a1).sub(&a2.scale(&two)).mul(b2))
        .add(&a2.mul(b1).mul(b1))
        .sub(&a1.mul(a2).mul(b1))
        .add(&a2.mul(a2))
}

/// The same resultant before expanding: `(B2-A2)² - A1(B1-A1)(B2-A2) + A2(B1-A1)²`.
pub fn resultant_e_unexpanded<C: Coeff>(q: &QuadraticPair<C>) -> MPoly<C> {
    let QuadraticPair { a1, a2, b1, b2 } = q;
    let d1 = b1.sub(a1);
    let d2 = b2.sub(a2);
    d2.mul(&d2).sub(&a1.mul(&d1).mul(&d2)).add(&a2.mul(&d1).mul(&d1))
}

/// Sylvester determinant of the two monic quadratics, by cofactor expansion.
pub fn sylvester<C: Coeff>(q: &QuadraticPair<C>) -> MPoly<C> {
    let vars = q.a1.vars();
    let one = MPoly::constant(&vars, C::one());
    let zero = MPoly::zero(&vars);
    let m = [
        [one.clone(), q.a1.clone(), q.a2.clone(), zero.clone()],
        [zero.clone(), one.clone(), q.a1.clone(), q.a2.clone()],
        [one.clone(), q.b1.clone(), q.b2.clone(), zero.clone()],
        [zero, one, q.b1.clone(), q.b2.clone()],
    ];
    det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn det<C: Coeff>(m: &[Vec<MPoly<C>>]) -> MPoly<C> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MPoly::zero(&m[0][0].vars());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly<C>>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect()).collect();
        let t = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn lin(v: &[&str], p: &Cyclo, s: &str, q: &Cyclo, t: &str) -> MPoly<Cyclo> {
    MPoly::var(v, s).unwrap().scale(p).add(&MPoly::var(v, t).unwrap().scale(q))
}

/// The pair coefficients `A1 = ((y-x)/(y-1)) a + ((xy-1)/(y-1)) b`, `A2 = x ab`, and likewise
/// `B` from `c, d, z`.
pub fn pair_coefficients(x: &RootOfUnity, y: &RootOfUnity, z: &RootOfUnity) -> Result<QuadraticPair<Cyclo>> {
    if x.is_one() || y.is_one() || z.is_one() {
        return Err(Error::Precondition("x, y, z must differ from 1".into()));
    }
    let (xc, yc, zc) = (x.to_cyclo(), y.to_cyclo(), z.to_cyclo());
    let one = Cyclo::one();
    let side = |w: &Cyclo, s: &str, t: &str| -> Result<(MPoly<Cyclo>, MPoly<Cyclo>)> {
        let den = (w - &one).inv()?;
        let p = &(w - &xc) * &den;
        let q = &(&(&xc * w) - &one) * &den;
        let prod = MPoly::var(&ABCD, s)?.mul(&MPoly::var(&ABCD, t)?).scale(&xc);
        Ok((lin(&ABCD, &p, s, &q, t), prod))
    };
    let (a1, a2) = side(&yc, "a", "b")?;
    let (b1, b2) = side(&zc, "c", "d")?;
    Ok(QuadraticPair { a1, a2, b1, b2 })
}

/// `E*`: the resultant with the pair coefficients substituted.
pub fn estar(x: &RootOfUnity, y: &RootOfUnity, z: &RootOfUnity) -> Result<MPoly<Cyclo>> {
    Ok(resultant_e(&pair_coefficients(x, y, z)?))
}

static C222_BY_ROOTS: Lazy<BTreeMap<Vec<i32>, MPoly<Rational>>> =
    Lazy::new(|| C222_POLY.collect(&["x", "y", "z"]).expect("c222 has x, y, z"));

/// The table-built eliminant with the roots fixed, as a polynomial in `a, b, c, d`.
pub fn specialized_p(x: &RootOfUnity, y: &RootOfUnity, z: &RootOfUnity) -> MPoly<Cyclo> {
    let r = [*x, *y, *z];
    let mut acc = MPoly::zero(&ABCD);
    for (e, coeff) in C222_BY_ROOTS.iter() {
        let w = (0..3).fold(RootOfUnity::one(), |acc, i| acc.mul(&r[i].pow(e[i] as i64)));
        let mut c = coeff.to_cyclo();
        c.reorder(&ABCD).expect("coefficients live in a, b, c, d");
        acc = acc.add(&c.scale(&w.to_cyclo()));
    }
    acc
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EstarReport {
    pub roots: [RootOfUnity; 3],
    /// `P = (y-1)²(z-1)²/x · E*` holds as polynomials in `a, b, c, d`.
    pub scaling_identity: bool,
    /// `x = -1` with `y = -1` or `z = -1`.
    pub non_injective_warning: bool,
    pub estar_terms: usize,
}

pub fn estar_check(x: &RootOfUnity, y: &RootOfUnity, z: &RootOfUnity) -> Result<EstarReport> {
    let e = estar(x, y, z)?;
    let one = Cyclo::one();
    let (yc, zc) = (y.to_cyclo(), z.to_cyclo());
    let factor = (&(&(&yc - &one) * &(&yc - &one)) * &(&(&zc - &one) * &(&zc - &one))).div(&x.to_cyclo())?;
    let p = specialized_p(x, y, z);
    let m1 = RootOfUnity::minus_one();
    Ok(EstarReport {
        roots: [*x, *y, *z],
        scaling_identity: p.sub(&e.scale(&factor)).is_zero(),
        non_injective_warning: *x == m1 && (*y == m1 || *z == m1),
        estar_terms: e.num_terms(),
    })
}

/// Closed-form criterion: all three roots are fourth roots of unity, or all are sixth roots.
pub fn defined_over_q_closed(x: &RootOfUnity, y: &RootOfUnity, z: &RootOfUnity) -> bool {
    let r = [x, y, z];
    r.iter().all(|w| 4 % w.order() == 0) || r.iter().all(|w| 6 % w.order() == 0)
}

/// Coefficient route: the specialized eliminant is a constant multiple of a rational polynomial.
pub fn defined_over_q_coeffs(x: &RootOfUnity, y: &RootOfUnity, z: &RootOfUnity) -> Result<bool> {
    let p = specialized_p(x, y, z);
    let mut terms = p.terms().map(|(_, c)| c);
    let Some(first) = terms.next() else {
        return Err(Error::Invalid("the eliminant vanishes identically".into()));
    };
    Ok(terms.all(|c| matches!(rational_ratio(c, first), RatioOutcome::Ratio(_))))
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DefinedOverQ {
    pub roots: [RootOfUnity; 3],
    pub closed_form: bool,
    pub coefficients: bool,
}

impl DefinedOverQ {
    pub fn agree(&self) -> bool {
        self.closed_form == self.coefficients
    }
}

pub fn defined_over_q(x: &RootOfUnity, y: &RootOfUnity, z: &RootOfUnity) -> Result<DefinedOverQ> {
    if x.is_one() || y.is_one() || z.is_one() {
        return Err(Error::Precondition("x, y, z must differ from 1".into()));
    }
    Ok(DefinedOverQ {
        roots: [*x, *y, *z],
        closed_form: defined_over_q_closed(x, y, z),
        coefficients: defined_over_q_coeffs(x, y, z)?,
    })
}

/// All triples of roots ≠ 1 whose orders divide `n`.
pub fn triples_dividing(n: u64) -> Vec<[RootOfUnity; 3]> {
    let r: Vec<RootOfUnity> = RootOfUnity::all_of_order_dividing(n).into_iter().filter(|w| !w.is_one()).collect();
    let mut out = Vec::new();
    for x in &r {
        for y in &r {
            for z in &r {
                out.push([*x, *y, *z]);
            }
        }
    }
    out
}

pub fn common_order(t: &[RootOfUnity; 3]) -> u64 {
    t.iter().fold(1, |acc, r| lcm(acc, r.order()))
}

/// The generic `E` over four free variables, for symbolic identities.
pub fn generic_pair() -> QuadraticPair<Rational> {
    let v = ["A1", "A2", "B1", "B2"];
    let g = |s: &str| MPoly::var(&v, s).unwrap();
    QuadraticPair { a1: g("A1"), a2: g("A2"), b1: g("B1"), b2: g("B2") }
}

/// `E(λA1, λ²A2, λB1, λ²B2) = λ⁴ E` as polynomials (λ a fifth variable).
pub fn weighted_homogeneous() -> bool {
    let v = ["A1", "A2", "B1", "B2", "L"];
    let g = |s: &str| MPoly::<Rational>::var(&v, s).unwrap();
    let l = g("L");
    let scaled = QuadraticPair { a1: l.mul(&g("A1")), a2: l.pow(2).mul(&g("A2")), b1: l.mul(&g("B1")), b2: l.pow(2).mul(&g("B2")) };
    let plain = QuadraticPair { a1: g("A1"), a2: g("A2"), b1: g("B1"), b2: g("B2") };
    resultant_e(&scaled).sub(&l.pow(4).mul(&resultant_e(&plain))).is_zero()
}

/// Evaluates `E` and the Sylvester determinant at rational coefficient values.
pub fn resultant_at(vals: [Rational; 4]) -> (Rational, Rational) {
    let q = generic_pair();
    let m: HashMap<&str, Rational> = ["A1", "A2", "B1", "B2"].into_iter().zip(vals).collect();
    (resultant_e(&q).eval(&m).unwrap(), sylvester(&q).eval(&m).unwrap())
}
