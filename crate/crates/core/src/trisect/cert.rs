use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::decide_trisection;
use crate::arith::{Elem, Field, Rational};
use crate::error::{Error, Result};
use crate::ntheory::{ext_gcd, gcd_i64, is_prime};
use crate::numeric::Interval;
use crate::poly::{eisenstein_check, resultant, resultant_minpoly, IntPoly};

/// Exact, re-checkable evidence for the irreducibility and trisection statements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `s x^3 - 3 s x - 3 r` is Eisenstein at 3, so `p(x, 3r/s)` is irreducible.
    #[serde(rename = "eisenstein-3rs")]
    Eisenstein3rs { r: i64, s: i64, a: String, polynomial: IntPoly, prime: u32, in_range: bool },
    /// No nonzero square of height `<= bound` in `[-2, 2]` is a trisection number.
    SquareFamily { bound: u64, checked: u64, members: Vec<String> },
    /// `3a + bk = 1`.
    YatesBezout { k: i64, a: i64, b: i64 },
    /// `f(q^(1/m))` has a squarefree characteristic polynomial of odd degree `m`.
    NonconstructibleWitness {
        m: u32,
        q: u64,
        minpoly: IntPoly,
        degree: usize,
        discriminant_nonzero: bool,
        approx: String,
    },
}

impl Certificate {
    /// Recompute every claim from the stored integers.
    pub fn verify(&self) -> bool {
        match self {
            Certificate::Eisenstein3rs { r, s, polynomial, prime, in_range, .. } => {
                let Ok(c) = eisenstein_cert_3rs(*r, *s) else { return false };
                let expected = IntPoly::from_i64(&[-3 * r, -3 * s, 0, *s]);
                *polynomial == expected
                    && *prime == 3
                    && eisenstein_check(polynomial, &BigInt::from(3)).unwrap_or(false)
                    && matches!(c, Certificate::Eisenstein3rs { in_range: ir, .. } if ir == *in_range)
            }
            Certificate::SquareFamily { bound, checked, members } => {
                let rep = square_family_check(*bound);
                rep.checked == *checked && rep.members == *members
            }
            Certificate::YatesBezout { k, a, b } => k % 3 != 0 && 3 * a + b * k == 1,
            Certificate::NonconstructibleWitness { m, q, minpoly, degree, discriminant_nonzero, .. } => {
                let Ok(again) = nonconstructible_witness(*m, *q) else { return false };
                matches!(&again, Certificate::NonconstructibleWitness { minpoly: p, .. } if p == minpoly)
                    && *degree == *m as usize
                    && minpoly.degree() == Some(*degree)
                    && *discriminant_nonzero
                    && witness_residual_ok(*m, *q, minpoly)
            }
        }
    }
}

pub fn eisenstein_cert_3rs(r: i64, s: i64) -> Result<Certificate> {
    if r == 0 || s == 0 {
        return Err(Error::BadParameters("r and s must be nonzero".into()));
    }
    let (r, s) = if s < 0 { (-r, -s) } else { (r, s) };
    if gcd_i64(r, s) != 1 || r % 3 == 0 || s % 3 == 0 {
        return Err(Error::BadParameters(format!("need gcd(r,s) = 1 and 3 ∤ r, s; got r={r}, s={s}")));
    }
    let polynomial = IntPoly::from_i64(&[-3 * r, -3 * s, 0, s]);
    debug_assert!(eisenstein_check(&polynomial, &BigInt::from(3)).unwrap());
    let a = Rational::new(3 * r, s)?;
    Ok(Certificate::Eisenstein3rs { r, s, in_range: (3 * r).abs() <= 2 * s, a: a.to_string(), polynomial, prime: 3 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareFamilyReport {
    pub bound: u64,
    pub checked: u64,
    /// Squares that turned out to be trisection numbers; expected empty.
    pub members: Vec<String>,
}

impl SquareFamilyReport {
    pub fn certificate(&self) -> Certificate {
        Certificate::SquareFamily { bound: self.bound, checked: self.checked, members: self.members.clone() }
    }
}

/// Decide every nonzero square `c^2 ∈ [-2, 2]` of height at most `h` over Q.
pub fn square_family_check(h: u64) -> SquareFamilyReport {
    let mut checked = 0;
    let mut members = Vec::new();
    let top = (h as f64).sqrt() as i64 + 1;
    for v in 1..=top {
        for u in 1..=top {
            let (uu, vv) = (u * u, v * v);
            if gcd_i64(u, v) != 1 || uu.max(vv) as u64 > h || uu > 2 * vv {
                continue;
            }
            let a = Elem::Rational(Rational::new(uu, vv).expect("v > 0"));
            checked += 1;
            if decide_trisection(Field::Rational, &a).expect("in range").member {
                members.push(a.to_string());
            }
        }
    }
    SquareFamilyReport { bound: h, checked, members }
}

/// `(a, b)` with `3a + bk = 1`.
pub fn yates_certificate(k: i64) -> Result<(i64, i64)> {
    if k < 1 || k % 3 == 0 {
        return Err(Error::BadParameters(format!("k = {k} must be positive and prime to 3")));
    }
    let (g, a, b) = ext_gcd(3, k);
    debug_assert_eq!(g, 1);
    Ok((a, b))
}

fn witness_value(m: u32, q: u64, prec: u32) -> Interval {
    let beta = Interval::root_of_rational(&Rational::from_int(q), m, prec);
    beta.pow(3).sub(&beta.mul_int(&BigInt::from(3)))
}

fn witness_residual_ok(m: u32, q: u64, minpoly: &IntPoly) -> bool {
    let v = minpoly.eval_interval(&witness_value(m, q, 200));
    v.contains_zero() && v.width_below_pow2(100)
}

/// Degree-`m` characteristic polynomial of `f(q^(1/m))`, certified squarefree.
pub fn nonconstructible_witness(m: u32, q: u64) -> Result<Certificate> {
    if m < 5 || m.is_multiple_of(2) || m.is_multiple_of(3) {
        return Err(Error::BadParameters(format!("m = {m} must be at least 5, odd and prime to 3")));
    }
    if !is_prime(q) {
        return Err(Error::BadParameters(format!("q = {q} must be prime")));
    }
    if m < 64 && q > 1u64 << m {
        return Err(Error::BadParameters(format!("q^(1/m) exceeds 2 for q = {q}, m = {m}")));
    }
    let g: Vec<Rational> = [0, -3, 0, 1].iter().map(|&c| Rational::from_int(c)).collect();
    let minpoly = resultant_minpoly(m, &Rational::from_int(q), &g)?;
    let deriv = IntPoly::new(minpoly.coeffs().iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect());
    let discriminant_nonzero = !resultant(&minpoly, &deriv).is_zero();
    let degree = minpoly.degree().unwrap_or(0);
    if degree != m as usize || !discriminant_nonzero || !witness_residual_ok(m, q, &minpoly) {
        return Err(Error::BadParameters(format!("degenerate witness for m = {m}, q = {q}")));
    }
    let approx = witness_value(m, q, 200).mid_f64();
    debug_assert!(approx.abs() <= 2.0 && minpoly.leading().is_some_and(|c| c.is_positive()));
    Ok(Certificate::NonconstructibleWitness {
        m,
        q,
        minpoly,
        degree,
        discriminant_nonzero,
        approx: format!("{approx:.15}"),
    })
}
