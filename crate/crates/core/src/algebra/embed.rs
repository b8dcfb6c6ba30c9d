//! Complex approximations of cyclotomic elements with a rigorous error bound.
//!
//! Values are fixed point: `re = re_m · 2^-scale`. Used only for choosing branches
//! and for display; exact questions are answered in the field itself.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cyclo::Cyclo;

/// `z ≈ (re_m + i·im_m)·2^-scale` with `|z - approx| ≤ err_bound` in each coordinate.
#[derive(Debug, Clone)]
pub struct ComplexApprox {
    pub re_m: BigInt,
    pub im_m: BigInt,
    pub scale: u32,
    /// Error bound in units of `2^-scale`.
    pub err_ulps: BigInt,
}

const GUARD: u32 = 64;

fn ldexp(m: &BigInt, scale: u32) -> f64 {
    // keep 64 significant bits before converting
    let bits = m.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (m >> shift as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powi((shift - scale as i64) as i32)
}

impl ComplexApprox {
    pub fn re(&self) -> f64 {
        ldexp(&self.re_m, self.scale)
    }

    pub fn im(&self) -> f64 {
        ldexp(&self.im_m, self.scale)
    }

    pub fn abs(&self) -> f64 {
        self.re().hypot(self.im())
    }

    /// Upper bound on the error of each coordinate.
    pub fn err_bound(&self) -> f64 {
        ldexp(&(&self.err_ulps + 1), self.scale)
    }

    pub fn sign_re(&self) -> Option<Ordering> {
        decided_sign(&self.re_m, &self.err_ulps)
    }

    pub fn sign_im(&self) -> Option<Ordering> {
        decided_sign(&self.im_m, &self.err_ulps)
    }

    fn rescale(&self, scale: u32) -> ComplexApprox {
        assert!(scale <= self.scale);
        let s = (self.scale - scale) as usize;
        ComplexApprox {
            re_m: &self.re_m >> s,
            im_m: &self.im_m >> s,
            scale,
            err_ulps: (&self.err_ulps >> s) + 2,
        }
    }

    pub fn add(&self, o: &ComplexApprox) -> ComplexApprox {
        let s = self.scale.min(o.scale);
        let (a, b) = (self.rescale(s), o.rescale(s));
        ComplexApprox { re_m: a.re_m + b.re_m, im_m: a.im_m + b.im_m, scale: s, err_ulps: a.err_ulps + b.err_ulps }
    }

    pub fn neg(&self) -> ComplexApprox {
        ComplexApprox { re_m: -&self.re_m, im_m: -&self.im_m, scale: self.scale, err_ulps: self.err_ulps.clone() }
    }

    pub fn half(&self) -> ComplexApprox {
        ComplexApprox { re_m: &self.re_m >> 1usize, im_m: &self.im_m >> 1usize, scale: self.scale, err_ulps: (&self.err_ulps >> 1usize) + 1 }
    }

    /// Principal square root; the bound uses `|√u - √v| ≤ √|u - v|`.
    pub fn sqrt(&self) -> ComplexApprox {
        let w = self.scale as usize;
        let (a, b) = (&self.re_m, &self.im_m);
        let r = (a * a + b * b).sqrt(); // |z|·2^w
        let half_sqrt = |v: BigInt| -> BigInt {
            let v: BigInt = (v << w) / 2;
            if v.is_negative() { BigInt::zero() } else { v.sqrt() }
        };
        let s_re = half_sqrt(&r + a);
        let mut s_im = half_sqrt(&r - a);
        if b.is_negative() {
            s_im = -s_im;
        }
        // error in |z| and ±a is ≤ 2·err + 1 ulps; √ of that, at scale w
        let e: BigInt = (&self.err_ulps * 4 + 4) << w;
        let e = e.sqrt() + 4;
        ComplexApprox { re_m: s_re, im_m: s_im, scale: self.scale, err_ulps: e }
    }
}

fn decided_sign(m: &BigInt, err: &BigInt) -> Option<Ordering> {
    if m.abs() > *err {
        Some(if m.is_positive() { Ordering::Greater } else { Ordering::Less })
    } else {
        None
    }
}

/// π·2^w, error below 2^-w·64.
fn pi_fixed(w: u32) -> BigInt {
    let g = w + 16;
    let atan_inv = |x: i64| -> BigInt {
        let one = BigInt::from(1) << g as usize;
        let x2 = BigInt::from(x * x);
        let mut term = one / x;
        let mut acc = BigInt::zero();
        let mut k = 0i64;
        while !term.is_zero() {
            let t = &term / (2 * k + 1);
            if k % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
            term /= &x2;
            k += 1;
        }
        acc
    };
    let pi = (atan_inv(5) * 4 - atan_inv(239)) * 4;
    pi >> 16usize
}

/// (cos θ, sin θ)·2^w for θ = 2π·num/den, with a bound on the error in ulps.
fn cos_sin(num: i64, den: u64, w: u32, pi: &BigInt) -> (BigInt, BigInt, BigInt) {
    // reduce to θ ∈ (-π, π]
    let n = den as i64;
    let mut k = num.rem_euclid(n);
    if 2 * k > n {
        k -= n;
    }
    let theta = (pi * (2 * k)) / n;
    let one = BigInt::from(1) << w as usize;
    let mut cos = one.clone();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut i = 1i64;
    loop {
        term = (&term * &theta >> w as usize) / i;
        if term.is_zero() {
            break;
        }
        match i % 4 {
            1 => sin += &term,
            2 => cos -= &term,
            3 => sin -= &term,
            _ => cos += &term,
        }
        i += 1;
    }
    // truncation errors grow at most like e^|θ| < 24 per step; θ carries 2·64+1 ulps
    let err = BigInt::from(24 * (i + 2) + 2 * 64 + 2);
    (cos, sin, err)
}

impl Cyclo {
    /// Approximation with at least `bits` bits after the binary point.
    pub fn embed(&self, bits: u32) -> ComplexApprox {
        let bits = bits.max(60);
        let w = bits + GUARD;
        if self.is_zero() {
            return ComplexApprox { re_m: BigInt::zero(), im_m: BigInt::zero(), scale: w, err_ulps: BigInt::zero() };
        }
        let pi = pi_fixed(w);
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let mut err = BigInt::zero();
        for (j, c) in self.numerators().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cs, sn, e) = if j == 0 {
                (BigInt::from(1) << w as usize, BigInt::zero(), BigInt::zero())
            } else {
                cos_sin(j as i64, self.order(), w, &pi)
            };
            re += c * cs;
            im += c * sn;
            err += c.abs() * e;
        }
        let den = self.denominator();
        ComplexApprox { re_m: re / den, im_m: im / den, scale: w, err_ulps: err / den + 2 }
    }

    /// Sign of a real element, refined until decided.
    pub fn real_sign(&self) -> Ordering {
        debug_assert!(self.is_real());
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            if let Some(s) = self.embed(bits).sign_re() {
                return s;
            }
            bits *= 2;
            assert!(bits < 1 << 16, "sign of a nonzero real element not resolved");
        }
    }

    /// Sign of the imaginary part.
    pub fn im_sign(&self) -> Ordering {
        self.im().real_sign()
    }

    /// Sign of the real part.
    pub fn re_sign(&self) -> Ordering {
        self.re().real_sign()
    }
}

/// Approximations of both roots of `t² + p t + q`, in no particular order.
pub fn quadratic_roots(p: &Cyclo, q: &Cyclo, bits: u32) -> [ComplexApprox; 2] {
    let disc = &(p * p) - &q.scale_int(4);
    let s = disc.embed(bits + 64).sqrt();
    let mp = p.embed(bits + 64).neg();
    [mp.add(&s).half(), mp.add(&s.neg()).half()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelfth_root() {
        let z = Cyclo::zeta(12).embed(60);
        assert!((z.re() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((z.im() - 0.5).abs() < 1e-15);
        assert!(z.err_bound() <= 2f64.powi(-60));
        let zero = Cyclo::zero().embed(60);
        assert_eq!(zero.re(), 0.0);
        assert_eq!(zero.err_bound(), 2f64.powi(-124));
    }

    #[test]
    fn pi_digits() {
        let pi = pi_fixed(200);
        let approx = ldexp(&pi, 200);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn signs() {
        let z = Cyclo::zeta(7);
        assert_eq!(z.im_sign(), Ordering::Greater);
        assert_eq!(z.conj().im_sign(), Ordering::Less);
        assert_eq!(Cyclo::zeta_pow(12, 5).re_sign(), Ordering::Less);
        // 2cos(2π/5) - (√5-1)/2 = 0 exactly, so the real part of the difference is 0
        let d = &Cyclo::zeta(5) + &Cyclo::zeta(5).conj();
        assert_eq!(d.real_sign(), Ordering::Greater);
    }

    #[test]
    fn square_roots_of_quadratic() {
        // t² + 1 = 0
        let r = quadratic_roots(&Cyclo::zero(), &Cyclo::one(), 80);
        let mut ims: Vec<f64> = r.iter().map(|c| c.im()).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 1.0).abs() < 1e-12 && (ims[1] - 1.0).abs() < 1e-12);
        assert!(r.iter().all(|c| c.re().abs() < 1e-12));
    }
}
