//! Exact arithmetic for Q and real quadratic fields, heights, and exact interval tests.
//!
//! Rationals embed into a quadratic field as `a2 = 0`, so every mixed operation goes
//! through one code path once both sides are lifted to the same radicand.

mod basis;
mod quad;
mod rational;

pub use basis::{height_in_basis, verify_commensurability, CommensurabilityReport};
pub use quad::{sign_surd, sign_surd_i128, QuadElem, Radicand};
pub use rational::Rational;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// The ambient field: Q or Q(sqrt d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Quadratic(Radicand),
}

impl Field {
    pub fn quadratic(d: i64) -> Result<Field> {
        Ok(Field::Quadratic(Radicand::new(d)?))
    }

    /// Degree over Q.
    pub fn degree(&self) -> u32 {
        match self {
            Field::Rational => 1,
            Field::Quadratic(_) => 2,
        }
    }

    pub fn radicand(&self) -> Option<i64> {
        match self {
            Field::Rational => None,
            Field::Quadratic(d) => Some(d.get()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rational => "Q".into(),
            Field::Quadratic(d) => format!("Q(sqrt({d}))"),
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match self {
            Field::Rational => Elem::Rational(Rational::from_int(n)),
            Field::Quadratic(d) => Elem::Quadratic(QuadElem::from_int(n, *d)),
        }
    }

    /// Lift an element into this field (rationals embed with `a2 = 0`).
    pub fn embed(&self, x: &Elem) -> Result<Elem> {
        match (self, x) {
            (Field::Rational, Elem::Rational(_)) => Ok(x.clone()),
            (Field::Rational, Elem::Quadratic(q)) => {
                q.to_rational().map(Elem::Rational).ok_or(Error::RadicandMismatch(0, q.d().get()))
            }
            (Field::Quadratic(d), Elem::Rational(r)) => Ok(Elem::Quadratic(QuadElem::from_rational(r, *d))),
            (Field::Quadratic(d), Elem::Quadratic(q)) => {
                if q.d() == *d {
                    Ok(x.clone())
                } else {
                    Err(Error::RadicandMismatch(d.get(), q.d().get()))
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A field together with the ordered Q-basis used for heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub field: Field,
    pub basis: Vec<Elem>,
}

impl FieldDescriptor {
    /// `{1}` for Q and `{1, sqrt d}` for Q(sqrt d).
    pub fn standard(field: Field) -> Self {
        let basis = match field {
            Field::Rational => vec![field.from_int(1)],
            Field::Quadratic(d) => vec![field.from_int(1), Elem::Quadratic(QuadElem::sqrt_d(d))],
        };
        FieldDescriptor { field, basis }
    }

    /// A custom basis; every element must be at least 1 and the set must be independent.
    pub fn with_basis(field: Field, basis: Vec<Elem>) -> Result<Self> {
        if basis.len() != field.degree() as usize {
            return Err(Error::DegenerateBasis);
        }
        let one = Rational::one();
        for v in &basis {
            let v = field.embed(v)?;
            if v.cmp_rational(&one) == std::cmp::Ordering::Less {
                return Err(Error::BadParameters(format!("basis element {v} is below 1")));
            }
        }
        if let (Field::Quadratic(_), [Elem::Quadratic(w1), Elem::Quadratic(w2)]) = (field, basis.as_slice()) {
            let det = w1.a1() * w2.a2() - w2.a1() * w1.a2();
            if det == BigInt::from(0) {
                return Err(Error::DegenerateBasis);
            }
        }
        Ok(FieldDescriptor { field, basis })
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    /// Product of the basis elements as a real number.
    pub fn basis_norm(&self) -> f64 {
        self.basis.iter().map(Elem::to_f64).product()
    }
}

/// An element of Q or of some Q(sqrt d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rational(Rational),
    Quadratic(QuadElem),
}

impl Elem {
    pub fn height(&self) -> BigInt {
        match self {
            Elem::Rational(r) => r.height(),
            Elem::Quadratic(q) => q.height(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rational(r) => r.is_zero(),
            Elem::Quadratic(q) => q.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Elem::Rational(r) => Some(r.clone()),
            Elem::Quadratic(q) => q.to_rational(),
        }
    }

    pub fn cmp_rational(&self, t: &Rational) -> std::cmp::Ordering {
        match self {
            Elem::Rational(r) => r.cmp(t),
            Elem::Quadratic(q) => q.cmp_rational(t),
        }
    }

    pub fn in_interval(&self, lo: &Rational, hi: &Rational) -> bool {
        match self {
            Elem::Rational(r) => r.in_interval(lo, hi),
            Elem::Quadratic(q) => q.in_interval(lo, hi),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Elem::Rational(r) => r.to_f64(),
            Elem::Quadratic(q) => q.to_f64(),
        }
    }

    fn lift_pair(&self, o: &Elem) -> Result<Option<(QuadElem, QuadElem)>> {
        match (self, o) {
            (Elem::Rational(_), Elem::Rational(_)) => Ok(None),
            (Elem::Quadratic(x), Elem::Rational(r)) => Ok(Some((x.clone(), QuadElem::from_rational(r, x.d())))),
            (Elem::Rational(r), Elem::Quadratic(y)) => Ok(Some((QuadElem::from_rational(r, y.d()), y.clone()))),
            (Elem::Quadratic(x), Elem::Quadratic(y)) => {
                if x.d() != y.d() {
                    return Err(Error::RadicandMismatch(x.d().get(), y.d().get()));
                }
                Ok(Some((x.clone(), y.clone())))
            }
        }
    }

    pub fn add(&self, o: &Elem) -> Result<Elem> {
        match self.lift_pair(o)? {
            None => Ok(Elem::Rational(self.as_rational().unwrap() + o.as_rational().unwrap())),
            Some((x, y)) => Ok(Elem::Quadratic(x.checked_add(&y)?)),
        }
    }

    pub fn sub(&self, o: &Elem) -> Result<Elem> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Elem) -> Result<Elem> {
        match self.lift_pair(o)? {
            None => Ok(Elem::Rational(self.as_rational().unwrap() * o.as_rational().unwrap())),
            Some((x, y)) => Ok(Elem::Quadratic(x.checked_mul(&y)?)),
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Rational(r) => Elem::Rational(-r),
            Elem::Quadratic(q) => Elem::Quadratic(q.neg()),
        }
    }

    pub fn inv(&self) -> Result<Elem> {
        match self {
            Elem::Rational(r) => Ok(Elem::Rational(r.recip()?)),
            Elem::Quadratic(q) => Ok(Elem::Quadratic(q.inv()?)),
        }
    }

    pub fn conjugate(&self) -> Elem {
        match self {
            Elem::Rational(_) => self.clone(),
            Elem::Quadratic(q) => Elem::Quadratic(q.conjugate()),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rational(r) => r.fmt(f),
            Elem::Quadratic(q) => q.fmt(f),
        }
    }
}

impl FromStr for Elem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains("sqrt") {
            Ok(Elem::Quadratic(s.parse()?))
        } else {
            Ok(Elem::Rational(s.parse()?))
        }
    }
}

impl serde::Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_ops_embed_rationals() {
        let half: Elem = "1/2".parse().unwrap();
        let phi: Elem = "(1+1*sqrt(5))/2".parse().unwrap();
        let s = half.add(&phi).unwrap();
        assert_eq!(s.to_string(), "(2+1*sqrt(5))/2");
        let p = half.mul(&half).unwrap();
        assert_eq!(p, Elem::Rational(Rational::new(1, 4).unwrap()));
        let r2: Elem = "(0+1*sqrt(2))/1".parse().unwrap();
        assert!(phi.add(&r2).is_err());
    }

    #[test]
    fn descriptors() {
        let f = Field::quadratic(2).unwrap();
        let fd = FieldDescriptor::standard(f);
        assert!((fd.basis_norm() - 2f64.sqrt()).abs() < 1e-12);
        let bad = FieldDescriptor::with_basis(f, vec![f.from_int(1), f.from_int(2)]);
        assert_eq!(bad, Err(Error::DegenerateBasis));
        assert_eq!(FieldDescriptor::standard(Field::Rational).basis_norm(), 1.0);
    }

    #[test]
    fn rationals_embed_into_quadratics() {
        let f = Field::quadratic(3).unwrap();
        let x = f.embed(&"3/2".parse().unwrap()).unwrap();
        assert_eq!(x.to_string(), "(3+0*sqrt(3))/2");
        assert_eq!(Field::Rational.embed(&x).unwrap().to_string(), "3/2");
    }
}
