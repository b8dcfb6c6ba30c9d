//! Elements of ℚ(ζ_n) in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`, reduced modulo Φ_n.
//!
//! Every element carries its own order `n`; binary operations lift both sides to
//! the lcm of the orders. Orders above [`order_cap`] are refused.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{divisors, euler_phi, gcd, lcm, mobius};
use super::rational::{fmt_rational, parse_rational, Rational};
use super::root::RootOfUnity;
use crate::error::{Error, Result};

const DEFAULT_ORDER_CAP: u64 = 10_000;

static ORDER_CAP: Lazy<u64> = Lazy::new(|| {
    std::env::var("LATTANGLE_ORDER_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
});

/// Largest cyclotomic order the library will work in.
pub fn order_cap() -> u64 {
    *ORDER_CAP
}

pub fn check_order(n: u64) -> Result<u64> {
    if n > order_cap() {
        Err(Error::OrderCap { order: n, cap: order_cap() })
    } else {
        Ok(n)
    }
}

/// Φ_n together with the reduction table for powers of ζ_n (when small enough).
struct OrderData {
    phi: usize,
    /// Nonzero coefficients of Φ_n below the leading term, as (degree, coefficient).
    tail: Vec<(usize, i64)>,
    /// Coordinates of ζ_n^e for e < n.
    table: Option<Arc<Vec<Vec<i64>>>>,
}

static CACHE: Lazy<Mutex<HashMap<u64, Arc<OrderData>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

const TABLE_LIMIT: u64 = 2_000_000;

fn order_data(n: u64) -> Arc<OrderData> {
    if let Some(d) = CACHE.lock().unwrap().get(&n) {
        return d.clone();
    }
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    let tail = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, *c))
        .collect();
    let mut data = OrderData { phi, tail, table: None };
    if n * phi as u64 <= TABLE_LIMIT {
        data.table = power_table(n, &data);
    }
    let data = Arc::new(data);
    CACHE.lock().unwrap().entry(n).or_insert(data).clone()
}

fn power_table(n: u64, data: &OrderData) -> Option<Arc<Vec<Vec<i64>>>> {
    let phi = data.phi;
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        rows.push(cur.clone());
        // multiply by ζ: shift up, fold the overflow through Φ_n
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        for &(i, c) in &data.tail {
            next[i] = next[i].checked_sub(top.checked_mul(c)?)?;
        }
        cur = next;
    }
    Some(Arc::new(rows))
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n > 0);
    let mut numer: Vec<i128> = vec![1];
    let mut denoms = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => {
                // multiply by x^d - 1
                let mut out = vec![0i128; numer.len() + d as usize];
                for (i, c) in numer.iter().enumerate() {
                    out[i + d as usize] += c;
                    out[i] -= c;
                }
                numer = out;
            }
            -1 => denoms.push(d as usize),
            _ => {}
        }
    }
    for d in denoms {
        let len = numer.len() - d;
        let mut q = vec![0i128; len];
        for i in 0..len {
            q[i] = if i >= d { q[i - d] } else { 0 } - numer[i];
        }
        numer = q;
    }
    numer.into_iter().map(|c| i64::try_from(c).expect("Φ_n coefficient fits i64")).collect()
}

/// Integer coordinates of `ζ_n^e` for `0 <= e < n`, for fast exact sweeps.
pub fn root_table(n: u64) -> Arc<Vec<Vec<i64>>> {
    let data = order_data(n);
    if let Some(t) = &data.table {
        return t.clone();
    }
    let rows = (0..n)
        .map(|e| {
            let mut c = vec![BigInt::zero(); e as usize + 1];
            c[e as usize] = BigInt::one();
            reduce(n, c).iter().map(|v| v.to_i64().expect("table entry fits i64")).collect()
        })
        .collect();
    Arc::new(rows)
}

pub fn phi(n: u64) -> usize {
    euler_phi(n) as usize
}

/// Reduces a polynomial in ζ_n (coefficients by exponent) to the power basis.
fn reduce(n: u64, mut c: Vec<BigInt>) -> Vec<BigInt> {
    let data = order_data(n);
    let phi = data.phi;
    let n = n as usize;
    if c.len() > n {
        for e in n..c.len() {
            let v = std::mem::take(&mut c[e]);
            if !v.is_zero() {
                c[e % n] += v;
            }
        }
        c.truncate(n);
    }
    if c.len() <= phi {
        c.resize(phi, BigInt::zero());
        return c;
    }
    if let Some(table) = &data.table {
        let mut out = c[..phi].to_vec();
        for (e, v) in c.iter().enumerate().skip(phi) {
            if v.is_zero() {
                continue;
            }
            for (j, t) in table[e].iter().enumerate() {
                if *t != 0 {
                    out[j] += v * t;
                }
            }
        }
        return out;
    }
    for d in (phi..c.len()).rev() {
        let top = std::mem::take(&mut c[d]);
        if top.is_zero() {
            continue;
        }
        for &(i, coef) in &data.tail {
            c[d - phi + i] -= &top * coef;
        }
    }
    c.truncate(phi);
    c
}

/// An element of ℚ(ζ_order), stored as `num / den` with integer numerators.
#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    fn normalized(order: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Cyclo {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|v| *v = -&*v);
        }
        let mut g = den.clone();
        for v in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(v);
        }
        if num.iter().all(|v| v.is_zero()) {
            den = BigInt::one();
        } else if !g.is_one() {
            num.iter_mut().for_each(|v| *v = &*v / &g);
            den /= &g;
        }
        Cyclo { order, num, den }
    }

    pub fn zero() -> Cyclo {
        Cyclo { order: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Cyclo {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Cyclo {
        Cyclo { order: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_rational(r: &Rational) -> Cyclo {
        Cyclo { order: 1, num: vec![r.numer().clone()], den: r.denom().clone() }
    }

    /// The root of unity `ρ` in its own field ℚ(ζ_{ord ρ}).
    pub fn root(r: &RootOfUnity) -> Cyclo {
        Self::root_in(r, r.den())
    }

    fn root_in(r: &RootOfUnity, n: u64) -> Cyclo {
        let e = r.exponent_in(n) as usize;
        let data = order_data(n);
        let num = match &data.table {
            Some(t) => t[e].iter().map(|&v| BigInt::from(v)).collect(),
            None => {
                let mut c = vec![BigInt::zero(); e + 1];
                c[e] = BigInt::one();
                reduce(n, c)
            }
        };
        Cyclo { order: n, num, den: BigInt::one() }
    }

    /// `ζ_n = e^{2πi/n}`.
    pub fn zeta(n: u64) -> Cyclo {
        Self::root(&RootOfUnity::of(1, n))
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u64, k: i64) -> Cyclo {
        Self::root(&RootOfUnity::of(k, n))
    }

    /// Builds an element from rational power-basis coordinates.
    pub fn from_coords(order: u64, coords: &[Rational]) -> Result<Cyclo> {
        check_order(order)?;
        if order == 0 || coords.len() != phi(order) {
            return Err(Error::Invalid(format!(
                "order {order} needs {} coordinates, got {}",
                if order == 0 { 0 } else { phi(order) },
                coords.len()
            )));
        }
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::normalized(order, num, den))
    }

    /// Sum `Σ c_e ζ_n^e` for arbitrary exponents.
    pub fn from_exponents(n: u64, terms: &[(i64, Rational)]) -> Cyclo {
        let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut c = vec![BigInt::zero(); n as usize];
        for (e, v) in terms {
            let e = e.rem_euclid(n as i64) as usize;
            c[e] += v.numer() * (&den / v.denom());
        }
        Self::normalized(n, reduce(n, c), den)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.num.iter().map(|v| Rational::new(v.clone(), self.den.clone())).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|v| v.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|v| v.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Rewrites the element in ℚ(ζ_m); requires `order | m`.
    pub fn lift(&self, m: u64) -> Result<Cyclo> {
        if m % self.order != 0 {
            return Err(Error::Invalid(format!("cannot lift order {} to {m}", self.order)));
        }
        check_order(m)?;
        Ok(self.lift_unchecked(m))
    }

    fn lift_unchecked(&self, m: u64) -> Cyclo {
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut c = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (j, v) in self.num.iter().enumerate() {
            c[j * step] = v.clone();
        }
        Cyclo { order: m, num: reduce(m, c), den: self.den.clone() }
    }

    fn common(&self, o: &Cyclo) -> (Cyclo, Cyclo) {
        if self.order == o.order {
            return (self.clone(), o.clone());
        }
        let m = lcm(self.order, o.order);
        if let Err(e) = check_order(m) {
            panic!("{e}");
        }
        (self.lift_unchecked(m), o.lift_unchecked(m))
    }

    /// Drops a rational element back to order 1.
    pub fn simplify(&self) -> Cyclo {
        if self.is_rational() && self.order != 1 {
            return Cyclo { order: 1, num: vec![self.num[0].clone()], den: self.den.clone() };
        }
        self.clone()
    }

    pub fn try_add(&self, o: &Cyclo) -> Result<Cyclo> {
        check_order(lcm(self.order, o.order))?;
        Ok(self + o)
    }

    pub fn try_mul(&self, o: &Cyclo) -> Result<Cyclo> {
        check_order(lcm(self.order, o.order))?;
        Ok(self * o)
    }

    pub fn scale(&self, r: &Rational) -> Cyclo {
        let num = self.num.iter().map(|v| v * r.numer()).collect();
        Self::normalized(self.order, num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: i64) -> Cyclo {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    fn map_exponents(&self, f: impl Fn(u64) -> u64) -> Cyclo {
        let n = self.order;
        let mut c = vec![BigInt::zero(); n as usize];
        for (j, v) in self.num.iter().enumerate() {
            if !v.is_zero() {
                c[f(j as u64) as usize] += v;
            }
        }
        Cyclo { order: n, num: reduce(n, c), den: self.den.clone() }
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Cyclo {
        let n = self.order;
        self.map_exponents(|j| (n - j) % n)
    }

    /// The automorphism ζ ↦ ζ^k, `gcd(k, order) = 1`.
    pub fn galois(&self, k: i64) -> Result<Cyclo> {
        let n = self.order;
        let k = k.rem_euclid(n as i64) as u64;
        if gcd(k, n) != 1 {
            return Err(Error::Invalid(format!("{k} is not a unit modulo {n}")));
        }
        Ok(self.map_exponents(|j| (j * k) % n))
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Real part `(x + x̄)/2`.
    pub fn re(&self) -> Cyclo {
        (self + &self.conj()).scale(&Rational::new(1.into(), 2.into()))
    }

    /// Imaginary part `(x - x̄)/(2i)`, as an element of the same field lifted by i.
    pub fn im(&self) -> Cyclo {
        let i = Cyclo::zeta(4);
        let d = self - &self.conj();
        // (x - x̄)/(2i) = -i (x - x̄)/2
        (&i * &d).scale(&Rational::new((-1).into(), 2.into()))
    }

    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Cyclo::from_rational(&Rational::new(self.den.clone(), self.num[0].clone())));
        }
        let n = self.order;
        let phi_poly: Vec<Rational> = cyclotomic_poly(n).iter().map(|&c| Rational::from_integer(c.into())).collect();
        let a: Vec<Rational> = self.num.iter().map(|v| Rational::from_integer(v.clone())).collect();
        let s = poly_inverse_mod(&a, &phi_poly).ok_or(Error::DivisionByZero)?;
        let mut s: Vec<Rational> = s.into_iter().map(|c| c * Rational::from_integer(self.den.clone())).collect();
        s.resize(phi(n), Rational::zero());
        Cyclo::from_coords(n, &s)
    }

    pub fn div(&self, o: &Cyclo) -> Result<Cyclo> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Cyclo> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Squared norm `x · x̄` (a real element).
    pub fn norm_sq(&self) -> Cyclo {
        self * &self.conj()
    }

    /// Stable key usable for hashing/dedup (canonical for a fixed order).
    pub fn key(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Inverse of `a` modulo `m` in ℚ[x] via the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let trim = |p: &mut Vec<Rational>| {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
    };
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
    while r1.len() != 1 {
        if r1.iter().all(|c| c.is_zero()) {
            return None;
        }
        let (q, r) = poly_divrem(&r0, &r1);
        let qs1 = poly_mul(&q, &s1);
        let s2 = poly_sub(&s0, &qs1);
        r0 = std::mem::replace(&mut r1, r);
        trim(&mut r1);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r1[0].is_zero() {
        return None;
    }
    let c = r1[0].recip();
    let (_, s) = poly_divrem(&s1.iter().map(|v| v * &c).collect::<Vec<_>>(), m);
    Some(s)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for d in (db..r.len()).rev() {
        let c = &r[d] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[d - db + i] -= t;
        }
        q[d - db] = c;
    }
    r.truncate(db.max(1));
    (q, r)
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        if self.order == o.order {
            return self.num == o.num && self.den == o.den;
        }
        let m = lcm(self.order, o.order);
        let (a, b) = (self.lift_unchecked(m), o.lift_unchecked(m));
        a.num == b.num && a.den == b.den
    }
}

impl Eq for Cyclo {}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        let (a, b) = self.common(o);
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect()
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        Cyclo::normalized(a.order, num, den)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        if self.order == 1 {
            return o.scale(&Rational::new(self.num[0].clone(), self.den.clone()));
        }
        if o.order == 1 {
            return self.scale(&Rational::new(o.num[0].clone(), o.den.clone()));
        }
        let (a, b) = self.common(o);
        let mut c = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Cyclo::normalized(a.order, reduce(a.order, c), &a.den * &b.den)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { order: self.order, num: self.num.iter().map(|v| -v).collect(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: &Cyclo) -> Cyclo {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Cyclo {
        Cyclo::from_int(v)
    }
}

impl From<&Rational> for Cyclo {
    fn from(r: &Rational) -> Cyclo {
        Cyclo::from_rational(r)
    }
}

impl From<RootOfUnity> for Cyclo {
    fn from(r: RootOfUnity) -> Cyclo {
        Cyclo::root(&r)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match j {
                0 => fmt_rational(c),
                1 => format!("{}*z", fmt_rational(c)),
                _ => format!("{}*z^{j}", fmt_rational(c)),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} [z=e^(2pi i/{})]", parts.join(" + "), self.order)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    order: u64,
    coords: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloJson { order: self.order, coords: self.coords().iter().map(fmt_rational).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        let coords = j
            .coords
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Cyclo::from_coords(j.order, &coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).iter().any(|&c| c == -2));
        for n in 1..200u64 {
            assert_eq!(cyclotomic_poly(n).len() - 1, phi(n));
        }
    }

    #[test]
    fn roots_reduce_mod_phi() {
        // ζ_4^2 = -1, ζ_3^2 = -1 - ζ_3
        assert_eq!(Cyclo::zeta_pow(4, 2), Cyclo::from_int(-1));
        assert_eq!(Cyclo::zeta_pow(3, 2).coords(), vec![int(-1), int(-1)]);
        // sum of all primitive 12th roots vanishes? no: μ(12) = 0
        let s = [1, 5, 7, 11].iter().fold(Cyclo::zero(), |acc, &k| acc + Cyclo::zeta_pow(12, k));
        assert!(s.is_zero());
        let s = [1, 2, 3, 4].iter().fold(Cyclo::zero(), |acc, &k| acc + Cyclo::zeta_pow(5, k));
        assert_eq!(s, Cyclo::from_int(-1));
    }

    #[test]
    fn lifting_preserves_value() {
        let i = Cyclo::zeta(4);
        assert_eq!(i.lift(12).unwrap(), Cyclo::zeta_pow(12, 3));
        assert_eq!(Cyclo::zeta(3), Cyclo::zeta_pow(6, 2));
        assert_eq!(Cyclo::zeta(3) + Cyclo::zeta(4), Cyclo::zeta_pow(12, 4) + Cyclo::zeta_pow(12, 3));
        assert!(Cyclo::zeta(4).lift(6).is_err());
    }

    #[test]
    fn inverse_checked_by_multiplication() {
        let z = Cyclo::zeta(12);
        let x = &z + &Cyclo::one();
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, Cyclo::one());
        assert_eq!(Cyclo::zero().inv(), Err(Error::DivisionByZero));
        let y = Cyclo::from_coords(7, &[int(1), rat(2, 3), int(0), int(-1), int(5), rat(1, 7)]).unwrap();
        assert_eq!(&y * &y.inv().unwrap(), Cyclo::one());
    }

    #[test]
    fn conjugation() {
        let z = Cyclo::zeta(12);
        assert_eq!(z.conj(), Cyclo::zeta_pow(12, 11));
        assert_eq!(&z * &z.conj(), Cyclo::one());
        assert!((z.clone() + z.conj()).is_real());
        assert_eq!(Cyclo::zeta(4).im(), Cyclo::one());
        assert_eq!(Cyclo::zeta(8).galois(3).unwrap(), Cyclo::zeta_pow(8, 3));
    }

    #[test]
    fn json_round_trip() {
        let x = Cyclo::zeta(12).scale(&rat(3, 2)) + Cyclo::from_int(-1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":12,"coords":["-1","3/2","0","0"]}"#);
        let back: Cyclo = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert!(serde_json::from_str::<Cyclo>(r#"{"order":12,"coords":["1"]}"#).is_err());
    }

    #[test]
    fn order_cap_enforced() {
        assert!(Cyclo::from_coords(order_cap() + 1, &[]).is_err());
        let a = Cyclo::zeta(101);
        let b = Cyclo::zeta(103);
        assert!(matches!(a.try_add(&b), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn root_table_matches_reduction() {
        for n in [7u64, 12, 30, 60, 105] {
            let t = root_table(n);
            for e in 0..n {
                let x = Cyclo::zeta_pow(n, e as i64).lift(n).unwrap();
                let expect: Vec<Rational> = t[e as usize].iter().map(|&v| int(v)).collect();
                assert_eq!(x.coords(), expect);
            }
        }
    }
}
