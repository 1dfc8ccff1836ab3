//! Elements of real quadratic fields Q(sqrt d) in the canonical `(a1 + a2*sqrt(d))/b` form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};
use crate::ntheory;

/// A validated squarefree radicand `d >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radicand(i64);

impl Radicand {
    pub fn new(d: i64) -> Result<Self> {
        if d < 2 || !ntheory::is_squarefree(d as u64) {
            return Err(Error::NonSquarefreeRadicand(d));
        }
        Ok(Radicand(d))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(a1 + a2*sqrt(d)) / b` with `b > 0` and `gcd(a1, a2, b) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a1: BigInt,
    a2: BigInt,
    b: BigInt,
    d: Radicand,
}

/// Sign of `u + v*sqrt(d)` for squarefree `d >= 2`, decided by one squaring.
pub fn sign_surd(u: &BigInt, v: &BigInt, d: i64) -> Ordering {
    let su = u.sign_cmp();
    let sv = v.sign_cmp();
    if sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    let lhs = u * u;
    let rhs = v * v * BigInt::from(d);
    match lhs.cmp(&rhs) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        // u^2 = d v^2 with v != 0 would make sqrt(d) rational
        Ordering::Equal => unreachable!("sqrt of a squarefree radicand is irrational"),
    }
}

/// Same as [`sign_surd`] on machine integers; inputs must keep `u^2`, `d v^2` inside i128.
pub fn sign_surd_i128(u: i128, v: i128, d: i128) -> Ordering {
    let su = u.cmp(&0);
    let sv = v.cmp(&0);
    if sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    match (u * u).cmp(&(v * v * d)) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => unreachable!("sqrt of a squarefree radicand is irrational"),
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl QuadElem {
    /// Canonical form of `(a1 + a2*sqrt(d)) / b`.
    pub fn canonicalize(a1: impl Into<BigInt>, a2: impl Into<BigInt>, b: impl Into<BigInt>, d: i64) -> Result<Self> {
        let d = Radicand::new(d)?;
        Self::from_parts(a1.into(), a2.into(), b.into(), d)
    }

    pub(crate) fn from_parts(mut a1: BigInt, mut a2: BigInt, mut b: BigInt, d: Radicand) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if b.is_negative() {
            a1 = -a1;
            a2 = -a2;
            b = -b;
        }
        // gcd(0, n) = n, so an all-zero numerator collapses to 0/1
        let g = a1.gcd(&a2).gcd(&b);
        if !g.is_one() {
            a1 /= &g;
            a2 /= &g;
            b /= &g;
        }
        Ok(QuadElem { a1, a2, b, d })
    }

    pub fn from_rational(r: &Rational, d: Radicand) -> Self {
        QuadElem { a1: r.num().clone(), a2: BigInt::zero(), b: r.den().clone(), d }
    }

    pub fn from_int(n: i64, d: Radicand) -> Self {
        Self::from_rational(&Rational::from_int(n), d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: Radicand) -> Self {
        QuadElem { a1: BigInt::zero(), a2: BigInt::one(), b: BigInt::one(), d }
    }

    pub fn a1(&self) -> &BigInt {
        &self.a1
    }

    pub fn a2(&self) -> &BigInt {
        &self.a2
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn d(&self) -> Radicand {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.a2.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.a1.clone(), self.b.clone()).expect("b > 0"))
    }

    /// `max(|a1|, |a2|, b)`.
    pub fn height(&self) -> BigInt {
        self.a1.abs().max(self.a2.abs()).max(self.b.clone())
    }

    fn check(&self, other: &QuadElem) -> Result<()> {
        if self.d != other.d {
            return Err(Error::RadicandMismatch(self.d.0, other.d.0));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &QuadElem) -> Result<QuadElem> {
        self.check(o)?;
        Self::from_parts(&self.a1 * &o.b + &o.a1 * &self.b, &self.a2 * &o.b + &o.a2 * &self.b, &self.b * &o.b, self.d)
    }

    pub fn checked_sub(&self, o: &QuadElem) -> Result<QuadElem> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &QuadElem) -> Result<QuadElem> {
        self.check(o)?;
        let d = BigInt::from(self.d.0);
        Self::from_parts(
            &self.a1 * &o.a1 + d * &self.a2 * &o.a2,
            &self.a1 * &o.a2 + &self.a2 * &o.a1,
            &self.b * &o.b,
            self.d,
        )
    }

    pub fn checked_div(&self, o: &QuadElem) -> Result<QuadElem> {
        self.checked_mul(&o.inv()?)
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem { a1: -&self.a1, a2: -&self.a2, b: self.b.clone(), d: self.d }
    }

    pub fn conjugate(&self) -> QuadElem {
        QuadElem { a1: self.a1.clone(), a2: -&self.a2, b: self.b.clone(), d: self.d }
    }

    /// Field norm `(a1^2 - d a2^2) / b^2`.
    pub fn norm(&self) -> Rational {
        let n = &self.a1 * &self.a1 - BigInt::from(self.d.0) * &self.a2 * &self.a2;
        Rational::new(n, &self.b * &self.b).expect("b > 0")
    }

    pub fn trace(&self) -> Rational {
        Rational::new(BigInt::from(2) * &self.a1, self.b.clone()).expect("b > 0")
    }

    /// `1/x = b (a1 - a2 sqrt d) / (a1^2 - d a2^2)`.
    pub fn inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = &self.a1 * &self.a1 - BigInt::from(self.d.0) * &self.a2 * &self.a2;
        Self::from_parts(&self.b * &self.a1, -(&self.b * &self.a2), n, self.d)
    }

    pub fn pow(&self, e: u32) -> QuadElem {
        let mut acc = QuadElem::from_int(1, self.d);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same radicand");
        }
        acc
    }

    /// Exact comparison against a rational number.
    pub fn cmp_rational(&self, t: &Rational) -> Ordering {
        // sign(a1/b + a2 sqrt(d)/b - p/q) = sign(q a1 - p b + q a2 sqrt d)
        let u = t.den() * &self.a1 - t.num() * &self.b;
        let v = t.den() * &self.a2;
        sign_surd(&u, &v, self.d.0)
    }

    pub fn signum(&self) -> Ordering {
        sign_surd(&self.a1, &self.a2, self.d.0)
    }

    /// `lo <= x <= hi`, decided exactly.
    pub fn in_interval(&self, lo: &Rational, hi: &Rational) -> bool {
        self.cmp_rational(lo) != Ordering::Less && self.cmp_rational(hi) != Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        let s = (self.d.0 as f64).sqrt();
        (self.a1.to_f64().unwrap_or(f64::NAN) + self.a2.to_f64().unwrap_or(f64::NAN) * s)
            / self.b.to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialOrd for QuadElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.d != other.d {
            return None;
        }
        Some(self.checked_sub(other).ok()?.signum())
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.a2.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.a1, sign, self.a2.abs(), self.d, self.b)
    }
}

impl FromStr for QuadElem {
    type Err = Error;

    /// Parses `(a1+a2*sqrt(d))/b` (also `(a1-a2*sqrt(d))/b`, and forms without `/b`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected (a1+a2*sqrt(d))/b, got `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, b) = match t.rsplit_once(")/") {
            Some((body, b)) => (format!("{body})"), b.to_string()),
            None => (t.clone(), "1".to_string()),
        };
        let body = body.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let sq = body.find("sqrt(").ok_or_else(bad)?;
        let d_str = body[sq + 5..].strip_suffix(')').ok_or_else(bad)?;
        let head = &body[..sq];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split head into a1 and a signed a2 at the last +/- that is not a leading sign
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a1 = BigInt::from_str(&head[..split]).map_err(|_| bad())?;
        let a2_str = &head[split..];
        let a2 = match a2_str {
            "+" => BigInt::one(),
            "-" => -BigInt::one(),
            _ => BigInt::from_str(a2_str.trim_start_matches('+')).map_err(|_| bad())?,
        };
        let d: i64 = d_str.parse().map_err(|_| bad())?;
        let b = BigInt::from_str(&b).map_err(|_| bad())?;
        QuadElem::canonicalize(a1, a2, b, d)
    }
}

impl serde::Serialize for QuadElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a1: i64, a2: i64, b: i64, d: i64) -> QuadElem {
        QuadElem::canonicalize(a1, a2, b, d).unwrap()
    }

    fn parts(x: &QuadElem) -> (i64, i64, i64) {
        (x.a1().try_into().unwrap(), x.a2().try_into().unwrap(), x.b().try_into().unwrap())
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(parts(&q(2, 2, 4, 5)), (1, 1, 2));
        assert_eq!(parts(&q(1, 0, -1, 2)), (-1, 0, 1));
        assert_eq!(parts(&q(4, -4, 8, 5)), (1, -1, 2));
        assert_eq!(parts(&q(0, 0, 7, 3)), (0, 0, 1));
    }

    #[test]
    fn canonicalize_errors() {
        assert_eq!(QuadElem::canonicalize(1, 1, 0, 2), Err(Error::ZeroDenominator));
        assert_eq!(QuadElem::canonicalize(1, 1, 1, 8), Err(Error::NonSquarefreeRadicand(8)));
        assert_eq!(QuadElem::canonicalize(1, 1, 1, 1), Err(Error::NonSquarefreeRadicand(1)));
    }

    #[test]
    fn heights() {
        assert_eq!(q(1, 1, 2, 5).height(), BigInt::from(2));
        assert_eq!(q(0, 0, 1, 5).height(), BigInt::from(1));
    }

    #[test]
    fn field_ops_examples() {
        let x = q(1, 1, 1, 2);
        assert_eq!(x.checked_mul(&x.conjugate()).unwrap(), QuadElem::from_int(-1, x.d()));
        assert_eq!(q(1, 1, 2, 5).conjugate(), q(1, -1, 2, 5));
        assert_eq!(parts(&q(0, 1, 1, 2).inv().unwrap()), (0, 1, 2));
        assert_eq!(QuadElem::from_int(0, Radicand::new(2).unwrap()).inv(), Err(Error::DivisionByZero));
        assert_eq!(q(1, 1, 1, 2).checked_add(&q(1, 1, 1, 3)), Err(Error::RadicandMismatch(2, 3)));
    }

    #[test]
    fn interval_examples() {
        let lo = Rational::from_int(-2);
        let hi = Rational::from_int(2);
        assert!(q(1, -1, 2, 5).in_interval(&lo, &hi));
        assert!(!q(2, 1, 1, 5).in_interval(&lo, &hi));
        // boundary values are included
        assert!(QuadElem::from_int(2, Radicand::new(3).unwrap()).in_interval(&lo, &hi));
    }

    #[test]
    fn text_round_trip() {
        for s in ["(1+1*sqrt(5))/2", "(1-1*sqrt(5))/2", "(0+1*sqrt(2))/1", "(-3+0*sqrt(7))/4"] {
            assert_eq!(s.parse::<QuadElem>().unwrap().to_string(), s);
        }
        assert_eq!("(2+2*sqrt(5))/4".parse::<QuadElem>().unwrap(), q(1, 1, 2, 5));
        assert_eq!("(1 - sqrt(2))".parse::<QuadElem>().unwrap(), q(1, -1, 1, 2));
        assert!("(1+1*sqrt(4))/2".parse::<QuadElem>().is_err());
    }
}
