//! Deciding whether `a` is a trisection number over Q or Q(sqrt d), i.e. whether
//! `x^3 - 3x - a` has a root in the field, plus the image map `f(x) = x^3 - 3x`.

mod cert;
mod density;

pub use cert::{
    eisenstein_cert_3rs, nonconstructible_witness, square_family_check, yates_certificate, Certificate,
    SquareFamilyReport,
};
pub use density::{density_experiment, fit_slope, numerator_coords, DensityPoint, DensityReport};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{Elem, Field, QuadElem, Radicand, Rational};
use crate::ball::{coords_for_b, Coords, Window};
use crate::error::{Error, Result};
use crate::ntheory::{divisors, exact_root, gcd3_i64};
use crate::poly::{rational_roots, RatPoly};

/// `f(x) = x^3 - 3x`.
pub fn apply_f(x: &Elem) -> Elem {
    match x {
        Elem::Rational(r) => Elem::Rational(&r.pow(3) - &(r * &Rational::from_int(3))),
        Elem::Quadratic(q) => Elem::Quadratic(raw_image(q).expect("gcd bound").reduced()),
    }
}

/// Unreduced image `(A1 + A2 sqrt d) / B` of `f` at a canonical quadratic element,
/// with `G = gcd(A1, A2, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageTriple {
    #[serde(serialize_with = "as_string")]
    pub a1: BigInt,
    #[serde(serialize_with = "as_string")]
    pub a2: BigInt,
    #[serde(serialize_with = "as_string")]
    pub b: BigInt,
    #[serde(serialize_with = "as_string")]
    pub g: BigInt,
    #[serde(skip)]
    d: Radicand,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl ImageTriple {
    pub fn reduced(&self) -> QuadElem {
        QuadElem::canonicalize(&self.a1 / &self.g, &self.a2 / &self.g, &self.b / &self.g, self.d.get())
            .expect("valid triple")
    }
}

pub fn raw_image(x: &QuadElem) -> Result<ImageTriple> {
    let (a1, a2, b) = (x.a1(), x.a2(), x.b());
    let d = BigInt::from(x.d().get());
    let three = BigInt::from(3);
    let b2 = b * b;
    let big_a1 = a1 * a1 * a1 + &three * &d * a1 * a2 * a2 - &three * a1 * &b2;
    let big_a2 = &three * a1 * a1 * a2 + &d * a2 * a2 * a2 - &three * a2 * &b2;
    let big_b = &b2 * b;
    let g = big_a1.gcd(&big_a2).gcd(&big_b);
    let bound = BigInt::from(8) * &d;
    if !(&bound % &g).is_zero() {
        return Err(Error::GcdBoundViolated {
            g: g.to_i64().unwrap_or(i64::MAX),
            bound: bound.to_i64().unwrap_or(i64::MAX),
        });
    }
    Ok(ImageTriple { a1: big_a1, a2: big_a2, b: big_b, g, d: x.d() })
}

/// Reduced image coordinates of `f` on machine integers (`d = 0` over Q).
pub fn image_coords(c: &Coords, d: i64) -> (i128, i128, i128) {
    let (a1, a2, b, d) = (c.a1 as i128, c.a2 as i128, c.b as i128, d as i128);
    let b2 = b * b;
    let x1 = a1 * a1 * a1 + 3 * d * a1 * a2 * a2 - 3 * a1 * b2;
    let x2 = 3 * a1 * a1 * a2 + d * a2 * a2 * a2 - 3 * a2 * b2;
    let x3 = b2 * b;
    let g = gcd_i128(gcd_i128(x1, x2), x3);
    (x1 / g, x2 / g, x3 / g)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Height bound `S` with `f(K) ∩ B_K(R) ⊆ f(B_K(S))`: the least integer
/// `S >= 2 R^(1/3)` over Q and `S >= 2 (8 d R)^(1/3)` over Q(sqrt d).
pub fn preimage_bound(field: Field, r: &Rational) -> BigInt {
    // S^3 >= 8 R  (resp. 64 d R)
    let t = match field {
        Field::Rational => r * &Rational::from_int(8),
        Field::Quadratic(d) => r * &Rational::from_int(64 * d.get()),
    };
    let c = t.ceil();
    if !c.is_positive() {
        return BigInt::one();
    }
    let mut s = c.nth_root(3);
    while Rational::from_int(&s * &s * &s) < t {
        s += 1;
    }
    s.max(BigInt::one())
}

/// `Phi_{D,E}(x) = D (x^3 - 3 E^2 x)`.
pub fn phi_curve(dd: &Rational, e: &Rational, x: &Rational) -> Rational {
    dd * &(&x.pow(3) - &(&(&Rational::from_int(3) * &e.pow(2)) * x))
}

/// One instance of the cubic-curve bound, decided exactly through cubes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiCheck {
    pub phi: String,
    /// `E <= T^(1/3)`
    pub premise: bool,
    /// `x >= T^(1/3) + E` implies `Phi > D T`
    pub far_implies_large: bool,
    /// `Phi <= D T` implies `x <= 2 T^(1/3)`
    pub upper: bool,
    /// `Phi >= -D T` implies `x >= -2 T^(1/3)`
    pub lower: bool,
}

impl PhiCheck {
    pub fn consistent(&self) -> bool {
        !self.premise || (self.far_implies_large && self.upper && self.lower)
    }
}

pub fn bound_check(dd: &Rational, e: &Rational, t: &Rational, x: &Rational) -> PhiCheck {
    let phi = phi_curve(dd, e, x);
    let dt = dd * t;
    let premise = e.pow(3) <= *t;
    let shifted = x - e;
    let far = !shifted.is_negative() && shifted.pow(3) >= *t;
    let eight_t = &Rational::from_int(8) * t;
    let below_2 = x.is_negative() || x.pow(3) <= eight_t;
    let above_m2 = !x.is_negative() || (-x).pow(3) <= eight_t;
    PhiCheck {
        phi: phi.to_string(),
        premise,
        far_implies_large: !far || phi > dt,
        upper: phi > dt || below_2,
        lower: phi < -&dt || above_m2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    RationalFastPath,
    BoundedSearch,
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrisectionVerdict {
    pub a: String,
    pub field: String,
    pub member: bool,
    pub witness: Option<String>,
    pub method: Method,
    pub search_bound: Option<String>,
    pub certificate: Option<Certificate>,
    #[serde(skip)]
    pub witness_elem: Option<Elem>,
}

fn check_range(a: &Elem) -> Result<()> {
    let two = Rational::from_int(2);
    if a.in_interval(&-&two, &two) {
        Ok(())
    } else {
        Err(Error::OutOfRange(a.to_string()))
    }
}

/// Rational `a = p/q` is `f(r/s)` iff `q = s^3` and `r (r^2 - 3 s^2) = p` for a divisor `r` of `p`.
pub fn rational_preimage(a: &Rational) -> Option<Rational> {
    let s = exact_root(a.den(), 3)?;
    let p = a.num();
    if p.is_zero() {
        return Some(Rational::zero());
    }
    let three_s2 = BigInt::from(3) * &s * &s;
    let hit = |r: &BigInt| &(r * (r * r - &three_s2)) == p;
    match p.abs().to_u64() {
        Some(n) => divisors(n)
            .into_iter()
            .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
            .find(|r| hit(r))
            .map(|r| Rational::new(r, s.clone()).expect("s > 0")),
        None => {
            // fall back on the rational roots of x^3 - 3x - a
            let poly = RatPoly::new(vec![-a.clone(), Rational::from_int(-3), Rational::zero(), Rational::one()]);
            rational_roots(&poly).into_iter().next()
        }
    }
}

/// Search `B_K(S) ∩ [-2, 2]` for `beta` with `f(beta) = a`. With `prune`, only denominators
/// `b` with `b^3 = B' G` for `G | 8d` are scanned (`B'` the denominator of `a`).
pub fn bounded_search(field: Field, a: &Elem, prune: bool) -> Result<Option<Elem>> {
    let a = field.embed(a)?;
    let target =
        Coords::from_elem(&a).ok_or_else(|| Error::BadParameters(format!("{a} is too large for the search")))?;
    let s = preimage_bound(field, &Rational::from_int(a.height()))
        .to_i64()
        .ok_or_else(|| Error::BadParameters("search bound too large".into()))?;
    let d = field.radicand().unwrap_or(0);
    let bs: Vec<i64> = if prune {
        let eight_d = if d == 0 { 1 } else { 8 * d as u64 };
        let mut v: Vec<i64> = divisors(eight_d)
            .into_iter()
            .filter_map(|g| exact_root(&(BigInt::from(target.b) * BigInt::from(g)), 3))
            .filter_map(|b| b.to_i64())
            .filter(|&b| b <= s)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    } else {
        (1..=s).collect()
    };
    let want = (target.a1 as i128, target.a2 as i128, target.b as i128);
    let w = Window::symmetric(2);
    for b in bs {
        for c in coords_for_b(field, s, b, Some(&w)) {
            if image_coords(&c, d) == want {
                debug_assert_eq!(gcd3_i64(c.a1, c.a2, c.b), 1);
                return Ok(Some(c.to_elem(field)));
            }
        }
    }
    Ok(None)
}

/// Decide whether `a ∈ [-2, 2]` is a trisection number over `field`.
pub fn decide_trisection(field: Field, a: &Elem) -> Result<TrisectionVerdict> {
    let a = field.embed(a)?;
    check_range(&a)?;
    let (witness, method, bound) = match (&field, &a) {
        (Field::Rational, Elem::Rational(r)) => {
            (rational_preimage(r).map(Elem::Rational), Method::RationalFastPath, None)
        }
        _ => {
            let s = preimage_bound(field, &Rational::from_int(a.height()));
            (bounded_search(field, &a, true)?, Method::BoundedSearch, Some(s.to_string()))
        }
    };
    if let Some(w) = &witness {
        assert_eq!(apply_f(w), a, "witness must map to a");
    }
    let certificate = match (&witness, a.as_rational()) {
        (None, Some(r)) => three_rs_form(&r).and_then(|(r, s)| eisenstein_cert_3rs(r, s).ok()),
        _ => None,
    };
    Ok(TrisectionVerdict {
        a: a.to_string(),
        field: field.name(),
        member: witness.is_some(),
        witness: witness.as_ref().map(ToString::to_string),
        method,
        search_bound: bound,
        certificate,
        witness_elem: witness,
    })
}

/// `a = 3r/s` with `3 ∤ r`, `3 ∤ s`, when `a` has that shape.
fn three_rs_form(a: &Rational) -> Option<(i64, i64)> {
    let p = a.num().to_i64()?;
    let q = a.den().to_i64()?;
    (p != 0 && p % 3 == 0 && (p / 3) % 3 != 0 && q % 3 != 0).then_some((p / 3, q))
}

#[cfg(test)]
mod tests;
