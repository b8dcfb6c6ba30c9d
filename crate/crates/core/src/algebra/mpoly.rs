//! Sparse multivariate Laurent polynomials over ℚ or a cyclotomic field.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::cyclo::Cyclo;
use super::rational::{fmt_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Coefficient rings usable in [`MPoly`].
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn from_rational(r: &Rational) -> Self;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_json(&self) -> Value {
        Value::String(fmt_rational(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        parse_rational(v.as_str().ok_or_else(|| Error::Parse("rational must be a string".into()))?)
    }
}

impl Coeff for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        Cyclo::inv(self)
    }
    fn from_rational(r: &Rational) -> Self {
        Cyclo::from_rational(r)
    }
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
    fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Polynomial in named variables; exponents may be negative.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C: Coeff> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: C) -> Self {
        let mut p = Self::zero(vars);
        p.insert(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let i = vars.iter().position(|v| *v == name).ok_or_else(|| Error::UnboundVariable(name.into()))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.insert(e, C::one());
        Ok(p)
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<i32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.insert(e, c);
        }
        p
    }

    fn insert(&mut self, e: Vec<i32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_vars(&self, o: &Self) {
        assert_eq!(self.vars, o.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_vars(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.insert(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut p = Self::zero(&self.vars());
        for (e, c) in &self.terms {
            p.insert(e.clone(), c.mul(k));
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_vars(o);
        let mut p = Self::zero(&self.vars());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.insert(e, c1.mul(c2));
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.vars(), C::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by the monomial with exponent vector `e` (use negatives to divide).
    pub fn shift(&self, e: &[i32]) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Exponent range of variable `name` over the support.
    pub fn degree_range(&self, name: &str) -> Option<(i32, i32)> {
        let i = self.vars.iter().position(|v| v == name)?;
        let lo = self.terms.keys().map(|e| e[i]).min()?;
        let hi = self.terms.keys().map(|e| e[i]).max()?;
        Some((lo, hi))
    }

    /// Evaluates with every variable bound.
    pub fn eval(&self, values: &HashMap<&str, C>) -> Result<C> {
        let vals: Vec<&C> = self
            .vars
            .iter()
            .map(|v| values.get(v.as_str()).ok_or_else(|| Error::UnboundVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut powers: Vec<HashMap<i32, C>> = vec![HashMap::new(); vals.len()];
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    t = t.mul(&power_cached(&mut powers[i], vals[i], k)?);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Binds some variables to constants; the result keeps the remaining variables.
    pub fn partial_eval(&self, values: &HashMap<&str, C>) -> Result<Self> {
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| !values.contains_key(self.vars[i].as_str())).collect();
        let new_vars: Vec<&str> = keep.iter().map(|&i| self.vars[i].as_str()).collect();
        let mut powers: Vec<HashMap<i32, C>> = vec![HashMap::new(); self.vars.len()];
        let mut p = Self::zero(&new_vars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    if let Some(v) = values.get(self.vars[i].as_str()) {
                        t = t.mul(&power_cached(&mut powers[i], v, k)?);
                    }
                }
            }
            p.insert(keep.iter().map(|&i| e[i]).collect(), t);
        }
        Ok(p)
    }

    /// Replaces every variable by a polynomial over `target` variables.
    /// A variable with a negative exponent must map to a single monomial.
    pub fn substitute(&self, target: &[&str], subs: &HashMap<&str, MPoly<C>>) -> Result<Self> {
        let images: Vec<MPoly<C>> = self
            .vars
            .iter()
            .map(|v| match subs.get(v.as_str()) {
                Some(p) => {
                    let mut q = p.clone();
                    q.reorder(target)?;
                    Ok(q)
                }
                None => MPoly::var(target, v),
            })
            .collect::<Result<_>>()?;
        let mut cache: Vec<HashMap<i32, MPoly<C>>> = vec![HashMap::new(); images.len()];
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !cache[i].contains_key(&k) {
                    let v = images[i].power(k)?;
                    cache[i].insert(k, v);
                }
                t = t.mul(&cache[i][&k]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    fn power(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        if self.terms.len() != 1 {
            return Err(Error::Invalid("negative power of a non-monomial".into()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv = c.inv()?;
        let m = MPoly::from_terms(&self.vars(), [(e.iter().map(|v| -v).collect(), inv)]);
        Ok(m.pow((-k) as u32))
    }

    /// Re-expresses the polynomial over a superset (or permutation) of its variables.
    pub fn reorder(&mut self, target: &[&str]) -> Result<()> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).ok_or_else(|| Error::UnboundVariable(v.clone())))
            .collect::<Result<_>>()?;
        let terms = std::mem::take(&mut self.terms);
        self.vars = target.iter().map(|s| s.to_string()).collect();
        for (e, c) in terms {
            let mut ne = vec![0; target.len()];
            for (i, k) in e.into_iter().enumerate() {
                ne[idx[i]] = k;
            }
            self.terms.insert(ne, c);
        }
        Ok(())
    }

    /// Groups terms by the exponents of `outer`; coefficients are polynomials in the rest.
    pub fn collect(&self, outer: &[&str]) -> Result<BTreeMap<Vec<i32>, MPoly<C>>> {
        let oi: Vec<usize> = outer
            .iter()
            .map(|v| self.vars.iter().position(|w| w == v).ok_or_else(|| Error::UnboundVariable(v.to_string())))
            .collect::<Result<_>>()?;
        let rest: Vec<usize> = (0..self.vars.len()).filter(|i| !oi.contains(i)).collect();
        let rest_names: Vec<&str> = rest.iter().map(|&i| self.vars[i].as_str()).collect();
        let mut out: BTreeMap<Vec<i32>, MPoly<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let ko: Vec<i32> = oi.iter().map(|&i| e[i]).collect();
            let kr: Vec<i32> = rest.iter().map(|&i| e[i]).collect();
            out.entry(ko).or_insert_with(|| MPoly::zero(&rest_names)).insert(kr, c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut p = MPoly::zero(&self.vars());
        for (e, c) in &self.terms {
            p.insert(e.clone(), f(c));
        }
        p
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.vars,
            "terms": self.terms.iter().map(|(e, c)| json!({"exp": e, "coeff": c.to_json()})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("polynomial JSON: {m}"));
        let vars: Vec<String> = serde_json::from_value(v["vars"].clone()).map_err(|_| bad("vars"))?;
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let mut p = Self::zero(&names);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let e: Vec<i32> = serde_json::from_value(t["exp"].clone()).map_err(|_| bad("exp"))?;
            if e.len() != names.len() {
                return Err(bad("exponent length"));
            }
            p.insert(e, C::from_json(&t["coeff"])?);
        }
        Ok(p)
    }
}

fn power_cached<C: Coeff>(cache: &mut HashMap<i32, C>, base: &C, k: i32) -> Result<C> {
    if let Some(v) = cache.get(&k) {
        return Ok(v.clone());
    }
    let b = if k < 0 { base.inv()? } else { base.clone() };
    let mut acc = C::one();
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(&b);
    }
    cache.insert(k, acc.clone());
    Ok(acc)
}

impl MPoly<Rational> {
    /// Lifts rational coefficients into the cyclotomic coefficient ring.
    pub fn to_cyclo(&self) -> MPoly<Cyclo> {
        self.map_coeffs(Cyclo::from_rational)
    }
}

/// Parses an arithmetic expression (`+ - * / ^`, parentheses, integer literals,
/// identifiers from `vars`) into a polynomial with rational coefficients.
/// Division is only allowed by a rational constant.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<MPoly<Rational>> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, vars };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s: String = cs[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += s.len();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let s: String = cs[i..].iter().take_while(|c| c.is_alphanumeric() || **c == '_').collect();
            i += s.chars().count();
            out.push(Tok::Ident(s));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = constant_value(&d).ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                acc = acc.scale(&Coeff::inv(&c)?);
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                // juxtaposition, as in `2 a^2 b`
                acc = acc.mul(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly<Rational>> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("expected an integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly<Rational>> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => Ok(MPoly::constant(self.vars, Rational::from_integer(n))),
            Some(Tok::Ident(name)) => MPoly::var(self.vars, &name),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn constant_value(p: &MPoly<Rational>) -> Option<Rational> {
    match p.terms.len() {
        0 => Some(<Rational as Zero>::zero()),
        1 => {
            let (e, c) = p.terms.iter().next().unwrap();
            e.iter().all(|&k| k == 0).then(|| c.clone())
        }
        _ => None,
    }
}
