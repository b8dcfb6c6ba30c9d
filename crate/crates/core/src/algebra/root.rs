//! Roots of unity e^{2πi k/n} stored as a reduced fraction k/n of a full turn.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{gcd, lcm};
use super::cyclo::Cyclo;
use crate::error::{Error, Result};

/// `e^{2πi num/den}` with `0 <= num < den`, `gcd(num, den) = 1`; `den = 1` only for 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    /// `ru_make`: reduces `k/n` modulo 1.
    pub fn new(k: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("root of unity with order 0".into()));
        }
        let k = k.rem_euclid(n as i64) as u64;
        let g = gcd(k, n);
        Ok(RootOfUnity { num: k / g, den: n / g })
    }

    /// Same as `new` for callers that know `n > 0`.
    pub fn of(k: i64, n: u64) -> Self {
        Self::new(k, n).expect("nonzero order")
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.den == 1
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = lcm(self.den, o.den);
        let k = self.num * (n / self.den) + o.num * (n / o.den);
        Self::of(k as i64, n)
    }

    pub fn inv(&self) -> Self {
        Self::of(-(self.num as i64), self.den)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = (self.num as i128 * e as i128).rem_euclid(self.den as i128);
        Self::of(k as i64, self.den)
    }

    /// Exponent `j` with `self = ζ_n^j`; requires `den | n`.
    pub fn exponent_in(&self, n: u64) -> u64 {
        assert!(n % self.den == 0, "order {} does not divide {}", self.den, n);
        self.num * (n / self.den)
    }

    pub fn to_cyclo(&self) -> Cyclo {
        Cyclo::root(self)
    }

    /// All `n`-th roots of unity, `ζ_n^0, ..., ζ_n^{n-1}`.
    pub fn all_of_order_dividing(n: u64) -> Vec<Self> {
        (0..n).map(|k| Self::of(k as i64, n)).collect()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parses `k/n` (as a fraction of a turn).
impl std::str::FromStr for RootOfUnity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (k, n) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected k/n, got `{s}`")))?;
        let k: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let n: u64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad order in `{s}`")))?;
        Self::new(k, n)
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    num: i64,
    den: u64,
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootJson { num: self.num as i64, den: self.den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RootJson::deserialize(d)?;
        RootOfUnity::new(j.num, j.den).map_err(serde::de::Error::custom)
    }
}
