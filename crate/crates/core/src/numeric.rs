//! Certified fixed-point interval arithmetic on big integers.
//!
//! An [`Interval`] at precision `p` is the real range `[lo, hi] * 2^-p`. Every
//! operation rounds `lo` down and `hi` up, so the true value is always enclosed.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn shr_floor(x: &BigInt, s: u32) -> BigInt {
    // BigInt >> rounds toward negative infinity
    x >> s
}

fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        let v = n.into() << prec;
        Interval { lo: v.clone(), hi: v, prec }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let scaled = r.num() << prec;
        Interval { lo: scaled.div_floor(r.den()), hi: div_ceil(&scaled, r.den()), prec }
    }

    pub fn from_f64_exact(x: f64, prec: u32) -> Self {
        let r = num_rational::BigRational::from_float(x).expect("finite float");
        Self::from_rational(&Rational::from_big_rational(r), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> Rational {
        Rational::new(self.lo.clone(), BigInt::one() << self.prec).unwrap()
    }

    pub fn hi(&self) -> Rational {
        Rational::new(self.hi.clone(), BigInt::one() << self.prec).unwrap()
    }

    pub fn mid_f64(&self) -> f64 {
        let m: BigInt = (&self.lo + &self.hi) >> 1;
        let shift = self.prec.saturating_sub(60);
        let top = (m >> shift).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(-((self.prec - shift) as i32))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        let lo = self.lo();
        let hi = self.hi();
        &lo <= r && r <= &hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Sign if certain, `None` if the interval straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// True when `hi - lo < 2^-bits`.
    pub fn width_below_pow2(&self, bits: u32) -> bool {
        let w = &self.hi - &self.lo;
        if bits >= self.prec {
            return w.is_zero();
        }
        w < (BigInt::one() << (self.prec - bits))
    }

    /// Upper bound on `max |x|` as a rational.
    pub fn mag(&self) -> Rational {
        let m = self.lo.abs().max(self.hi.abs());
        Rational::new(m, BigInt::one() << self.prec).unwrap()
    }

    /// `max |x| <= eps`.
    pub fn mag_le(&self, eps: &Rational) -> bool {
        self.mag() <= *eps
    }

    fn same(&self, o: &Interval) {
        assert_eq!(self.prec, o.prec, "interval precision mismatch");
    }

    pub fn add(&self, o: &Interval) -> Interval {
        self.same(o);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.same(o);
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        self.same(o);
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = ps.iter().min().unwrap();
        let mx = ps.iter().max().unwrap();
        Interval { lo: shr_floor(mn, self.prec), hi: shr_ceil(mx, self.prec), prec: self.prec }
    }

    pub fn square(&self) -> Interval {
        let s = self.mul(self);
        if self.contains_zero() {
            Interval { lo: BigInt::zero(), hi: s.hi, prec: s.prec }
        } else {
            s
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a, prec: self.prec }
        } else {
            Interval { lo: a, hi: b, prec: self.prec }
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(k.is_positive());
        Interval { lo: self.lo.div_floor(k), hi: div_ceil(&self.hi, k), prec: self.prec }
    }

    pub fn mul_rational(&self, r: &Rational) -> Interval {
        self.mul_int(r.num()).div_int(r.den())
    }

    /// Square root of a non-negative interval.
    pub fn sqrt(&self) -> Interval {
        assert!(!self.lo.is_negative(), "sqrt of a possibly negative interval");
        let lo = (&self.lo << self.prec).sqrt();
        let hs = &self.hi << self.prec;
        let mut hi = hs.sqrt();
        if &hi * &hi < hs {
            hi += 1;
        }
        Interval { lo, hi, prec: self.prec }
    }

    /// `r^(1/m)` for rational `r >= 0`.
    pub fn root_of_rational(r: &Rational, m: u32, prec: u32) -> Interval {
        assert!(!r.is_negative());
        let scaled = (r.num() << (prec * m)).div_floor(r.den());
        let lo = scaled.nth_root(m);
        Interval { hi: &lo + 1, lo, prec }
    }

    pub fn pow(&self, e: u32) -> Interval {
        let mut acc = Interval::from_int(1, self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// pi by Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(prec: u32) -> Interval {
        let a = atan_inv(5, prec).mul_int(&BigInt::from(16));
        let b = atan_inv(239, prec).mul_int(&BigInt::from(4));
        a.sub(&b)
    }

    pub fn cos(&self) -> Interval {
        let x = self.reduce_2pi();
        taylor(&x, true).clamp_unit()
    }

    pub fn sin(&self) -> Interval {
        let x = self.reduce_2pi();
        taylor(&x, false).clamp_unit()
    }

    fn clamp_unit(self) -> Interval {
        let one = BigInt::one() << self.prec;
        Interval { lo: self.lo.max(-one.clone()), hi: self.hi.min(one), prec: self.prec }
    }

    /// Subtract the nearest multiple of 2 pi (nearest by the f64 midpoint).
    fn reduce_2pi(&self) -> Interval {
        let k = (self.mid_f64() / std::f64::consts::TAU).round();
        if k == 0.0 {
            return self.clone();
        }
        let two_pi = Interval::pi(self.prec).mul_int(&BigInt::from(2));
        self.sub(&two_pi.mul_int(&BigInt::from(k as i64)))
    }
}

/// `atan(1/n)` for an integer `n >= 2`, by the alternating series.
fn atan_inv(n: u64, prec: u32) -> Interval {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut sum = Interval::from_int(0, prec);
    // power = 1/n^(2k+1)
    let mut power = Interval::from_int(1, prec).div_int(&n);
    let mut k = 0u64;
    loop {
        let term = power.div_int(&BigInt::from(2 * k + 1));
        sum = if k.is_multiple_of(2) { sum.add(&term) } else { sum.sub(&term) };
        power = power.div_int(&n2);
        k += 1;
        if power.hi <= BigInt::one() {
            // remaining tail is bounded by the next term, itself below 2^-prec
            let tail = Interval { lo: -power.hi.clone() - 1, hi: power.hi.clone() + 1, prec };
            return sum.add(&tail);
        }
    }
}

/// Taylor series of cos (even = true) or sin around 0 with a Lagrange tail bound.
fn taylor(x: &Interval, even: bool) -> Interval {
    let prec = x.prec;
    let x2 = x.square();
    let mut term = if even { Interval::from_int(1, prec) } else { x.clone() };
    let mut sum = term.clone();
    let mut k: u64 = if even { 0 } else { 1 };
    let m: f64 = x.mag().to_f64().max(1.0);
    let mut i = 1u64;
    loop {
        term = term.mul(&x2).div_int(&BigInt::from((k + 1) * (k + 2)));
        k += 2;
        // once terms are shrinking and below one ulp, the next term bounds the tail
        if (k as f64) > 2.0 * m && term.lo.abs().max(term.hi.abs()) <= BigInt::one() {
            let t: BigInt = term.lo.abs().max(term.hi.abs()) + 1;
            return sum.add(&Interval { lo: -t.clone(), hi: t, prec });
        }
        sum = if i % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        i += 1;
    }
}

/// Horner evaluation of an integer-coefficient polynomial (ascending coefficients).
pub fn eval_int_poly(coeffs: &[BigInt], x: &Interval) -> Interval {
    let mut acc = Interval::from_int(0, x.prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&Interval::from_int(c.clone(), x.prec));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn pi_encloses_known_digits() {
        let pi = Interval::pi(200);
        // 355/113 is a classical overestimate; 3.14159265358979323846 digits bracket pi
        assert!(pi.hi() < rat(355, 113));
        let lo = "314159265358979323846264338327950288".parse::<BigInt>().unwrap();
        let hi = "314159265358979323846264338327950289".parse::<BigInt>().unwrap();
        let scale = BigInt::from(10).pow(35);
        assert!(pi.lo() >= Rational::new(lo, scale.clone()).unwrap());
        assert!(pi.hi() <= Rational::new(hi, scale).unwrap());
        assert!(pi.width_below_pow2(190));
    }

    #[test]
    fn cos_sin_known_values() {
        let p = 160;
        let pi = Interval::pi(p);
        let c = pi.div_int(&BigInt::from(3)).cos();
        assert!(c.contains(&rat(1, 2)));
        assert!(c.width_below_pow2(140));
        let s = pi.div_int(&BigInt::from(6)).sin();
        assert!(s.contains(&rat(1, 2)));
        let c0 = Interval::from_int(0, p).cos();
        assert!(c0.contains(&rat(1, 1)));
        // large arguments reduce modulo 2 pi
        let big = pi.mul_int(&BigInt::from(40)).add(&pi.div_int(&BigInt::from(3)));
        assert!(big.cos().contains(&rat(1, 2)));
        assert!(big.cos().width_below_pow2(120));
    }

    #[test]
    fn roots_and_sqrt() {
        let s = Interval::from_int(2, 128).sqrt();
        assert!(s.square().contains(&rat(2, 1)));
        let r = Interval::root_of_rational(&rat(2, 1), 5, 128);
        assert!(r.pow(5).contains(&rat(2, 1)));
        assert!(r.width_below_pow2(120));
    }

    #[test]
    fn float_agreement() {
        for &x in &[0.1, 1.0, 2.5, -3.0, 17.25, -123.5] {
            let i = Interval::from_f64_exact(x, 100);
            assert!((i.cos().mid_f64() - x.cos()).abs() < 1e-14);
            assert!((i.sin().mid_f64() - x.sin()).abs() < 1e-14);
        }
    }
}
