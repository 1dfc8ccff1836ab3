use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::int::{parse_terms, write_terms};
use super::IntPoly;
use crate::arith::Rational;
use crate::error::Result;

/// Dense polynomial over Q, ascending coefficients, normalized like [`IntPoly`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `(content, primitive integer part)` with `self = content * part` and the part's
    /// leading coefficient positive.
    pub fn content_and_primitive(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::one(), IntPoly::zero());
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.den()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.num() * (&l / c.den())).collect();
        let cleared = IntPoly::new(ints);
        let prim = cleared.primitive_part();
        let lead_ratio =
            Rational::new(cleared.leading().unwrap().clone(), prim.leading().unwrap().clone()).expect("nonzero");
        (&lead_ratio / &Rational::from_int(l), prim)
    }

    /// Multiply through by the lcm of denominators (sign and content untouched otherwise).
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.den()));
        let ints = self.coeffs.iter().map(|c| c.num() * (&l / c.den())).collect();
        (l, IntPoly::new(ints))
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        RatPoly::new(p.coeffs().iter().map(|c| Rational::from_int(c.clone())).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.abs(), c.is_negative())),
        )
    }
}

impl FromStr for RatPoly {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s)?;
        let n = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut v = vec![Rational::zero(); n + 1];
        for (c, d) in terms {
            v[d] = &v[d] + &c.parse::<Rational>()?;
        }
        Ok(RatPoly::new(v))
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, o: &'a RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &'a RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &'a RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        RatPoly::new(v)
    }
}

impl serde::Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}
