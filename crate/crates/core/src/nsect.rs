//! The p-section polynomial `P(x, a) = T_p(x) - a` with `cos(p t) = T_p(cos t)`, its
//! structural facts, and Eisenstein certificates that an angle is not p-sectable.
//!
//! Everything here uses the `cos` convention; the trisection code uses `2 cos`.
//! For p = 3 the two are related by `2 P(x, a) = p(2x, 2a)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ntheory::{binomial, euler_phi, ext_gcd, factorize, gcd_i64, is_power_of_two, is_prime};
use crate::poly::{eisenstein_check, IntPoly};

/// `P(x, a) = body(x) - a` for an odd prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsectionPoly {
    pub p: u64,
    pub q: u64,
    pub body: IntPoly,
}

impl std::fmt::Display for PsectionPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} - a", self.body)
    }
}

pub fn psection_poly(p: u64) -> Result<PsectionPoly> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let q = (p - 1) / 2;
    let mut c = vec![BigInt::zero(); p as usize + 1];
    for k in 0..=q {
        let outer = binomial(p, 2 * k);
        for l in 0..=k {
            let term = &outer * binomial(k, l);
            let e = (p - 2 * k + 2 * l) as usize;
            if (k + l) % 2 == 0 {
                c[e] += term;
            } else {
                c[e] -= term;
            }
        }
    }
    let pp = PsectionPoly { p, q, body: IntPoly::new(c) };
    debug_assert!(verify_structure(&pp).all_ok());
    Ok(pp)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub p: u64,
    pub degree_ok: bool,
    /// leading coefficient is `2^(p-1)`, also recomputed as the sum of `C(p, 2k)`
    pub leading_ok: bool,
    pub binomial_sum_ok: bool,
    /// coefficient of `x` is `(-1)^q p`
    pub x_coeff_ok: bool,
    /// every coefficient strictly between the constant and the top is divisible by p
    pub divisible_ok: bool,
    /// only odd powers of x occur in the body
    pub odd_ok: bool,
}

impl StructureReport {
    pub fn all_ok(&self) -> bool {
        self.degree_ok && self.leading_ok && self.binomial_sum_ok && self.x_coeff_ok && self.divisible_ok && self.odd_ok
    }
}

pub fn verify_structure(pp: &PsectionPoly) -> StructureReport {
    let p = pp.p;
    let top = BigInt::one() << (p - 1);
    let sum: BigInt = (0..=pp.q).map(|k| binomial(p, 2 * k)).sum();
    let sign = if pp.q.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let pb = BigInt::from(p);
    let coeffs = pp.body.coeffs();
    StructureReport {
        p,
        degree_ok: pp.body.degree() == Some(p as usize),
        leading_ok: pp.body.leading() == Some(&top),
        binomial_sum_ok: sum == top,
        x_coeff_ok: pp.body.coeff(1) == sign * &pb,
        divisible_ok: coeffs.iter().take(p as usize).skip(1).all(|c| (c % &pb).is_zero()),
        odd_ok: coeffs.iter().enumerate().all(|(i, c)| i % 2 == 1 || c.is_zero()),
    }
}

/// `dd^p P(x, c/dd)` is Eisenstein at `p`, so `cos(alpha) = c/dd` gives a non-p-sectable angle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NsectCertificate {
    pub p: u64,
    pub c: i64,
    pub dd: i64,
    pub cos_alpha: String,
    pub polynomial: IntPoly,
    pub eisenstein: bool,
}

impl NsectCertificate {
    pub fn verify(&self) -> bool {
        match nonsectability_cert(self.p, self.c, self.dd) {
            Ok(again) => again == *self && eisenstein_check(&self.polynomial, &BigInt::from(self.p)).unwrap_or(false),
            Err(_) => false,
        }
    }
}

pub fn nonsectability_cert(p: u64, c: i64, dd: i64) -> Result<NsectCertificate> {
    let pp = psection_poly(p)?;
    let pi = p as i64;
    if dd < 1 {
        return Err(Error::BadParameters(format!("denominator {dd} must be positive")));
    }
    if c % pi != 0 || c % (pi * pi) == 0 {
        return Err(Error::BadParameters(format!("{c} must be divisible by {p} but not by {}", p * p)));
    }
    if gcd_i64(c, dd) != 1 {
        return Err(Error::BadParameters(format!("{c} and {dd} share a factor")));
    }
    if c.abs() > dd {
        return Err(Error::BadParameters(format!("|{c}/{dd}| > 1 is not a cosine")));
    }
    let ddb = BigInt::from(dd);
    let ddp = num_traits::pow(ddb.clone(), p as usize);
    let mut poly = pp.body.scale(&ddp);
    let constant = BigInt::from(c) * num_traits::pow(ddb, p as usize - 1);
    poly = &poly - &IntPoly::constant(constant);
    let eisenstein = eisenstein_check(&poly, &BigInt::from(p))?;
    Ok(NsectCertificate { p, c, dd, cos_alpha: Rational::new(c, dd)?.to_string(), polynomial: poly, eisenstein })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NsectReduction {
    /// n-section is always possible.
    PowerOfTwo { n: u64 },
    /// An n-sectable angle is p-sectable, so a non-p-sectable angle blocks n-section.
    OddPrime { n: u64, p: u64, rationale: String },
}

pub fn nsect_reduce(n: u64) -> Result<NsectReduction> {
    if n == 0 {
        return Err(Error::BadParameters("n must be positive".into()));
    }
    if is_power_of_two(n) {
        return Ok(NsectReduction::PowerOfTwo { n });
    }
    let p = factorize(n).into_iter().map(|(p, _)| p).find(|&p| p != 2).expect("odd factor");
    Ok(NsectReduction::OddPrime {
        n,
        p,
        rationale: format!("{p} divides {n}: an angle that is {n}-sectable is {p}-sectable"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseFamily {
    pub n: u64,
    pub m: u64,
    /// `a n + b m = 1`
    pub a: i64,
    pub b: i64,
    pub phi_n: u64,
    /// Whether `phi(n)` is a power of two, the condition for `2 pi / n` to be constructible.
    pub n_gon_constructible: bool,
}

pub fn dense_family_certificate(n: u64, m: u64) -> Result<DenseFamily> {
    if n == 0 || m == 0 {
        return Err(Error::BadParameters("n and m must be positive".into()));
    }
    let (g, a, b) = ext_gcd(n as i64, m as i64);
    if g != 1 {
        return Err(Error::BadParameters(format!("gcd({n}, {m}) = {g}")));
    }
    let phi_n = euler_phi(n);
    Ok(DenseFamily { n, m, a, b, phi_n, n_gon_constructible: is_power_of_two(phi_n) })
}

/// `2 P(x, a) = p(2x, 2a)` for p = 3, with `p(x, a) = x^3 - 3x - a`; compared coefficientwise
/// in x and in a.
pub fn bridge_p3() -> bool {
    let pp = psection_poly(3).expect("3 is prime");
    let two = BigInt::from(2);
    // both polynomials carry the parameter as `-1 * a`
    let (big_p_a, small_p_a) = (-BigInt::one(), -BigInt::one());
    let small_p_body = IntPoly::from_i64(&[0, -3, 0, 1]);
    pp.body.scale(&two) == small_p_body.scale_var(&two) && &two * big_p_a == small_p_a * &two
}

/// Precision large enough to evaluate `body` near `[-1, 1]` with `extra` bits to spare.
pub fn eval_precision(body: &IntPoly, extra: u32) -> u32 {
    let bits = body.coeffs().iter().map(|c| c.abs().bits()).max().unwrap_or(1) as u32;
    extra + bits + 2 * (64 - (body.coeffs().len() as u64).leading_zeros())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Interval;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_primes() {
        assert_eq!(psection_poly(3).unwrap().body, IntPoly::from_i64(&[0, -3, 0, 4]));
        assert_eq!(psection_poly(5).unwrap().body, IntPoly::from_i64(&[0, 5, 0, -20, 0, 16]));
        assert_eq!(psection_poly(7).unwrap().body, IntPoly::from_i64(&[0, -7, 0, 56, 0, -112, 0, 64]));
        assert_eq!(psection_poly(3).unwrap().to_string(), "-3*x + 4*x^3 - a");
        assert!(matches!(psection_poly(9), Err(Error::NotOddPrime(9))));
        assert!(matches!(psection_poly(2), Err(Error::NotOddPrime(2))));
    }

    #[test]
    fn structure_up_to_101() {
        for p in (3..=101).filter(|&p| is_prime(p)) {
            assert!(verify_structure(&psection_poly(p).unwrap()).all_ok(), "p = {p}");
        }
    }

    #[test]
    fn chebyshev_agreement() {
        // 2 T_p(x/2) = C_p(x)
        for p in [3u64, 5, 7, 11, 13] {
            let body = psection_poly(p).unwrap().body;
            let c = crate::poly::chebyshev_like(p);
            for i in 0..=p as usize {
                assert_eq!(c.coeff(i) << i, body.coeff(i) * 2, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn certificates() {
        let c = nonsectability_cert(3, 3, 4).unwrap();
        assert_eq!(c.polynomial, IntPoly::from_i64(&[-48, -192, 0, 256]));
        assert!(c.eisenstein && c.verify());
        let c = nonsectability_cert(5, 5, 7).unwrap();
        assert!(c.eisenstein && c.verify());
        assert!(nonsectability_cert(3, 9, 10).is_err());
        assert!(nonsectability_cert(3, 6, 4).is_err());
        assert!(nonsectability_cert(3, 3, 2).is_err());
        assert!(nonsectability_cert(4, 4, 5).is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(nsect_reduce(8).unwrap(), NsectReduction::PowerOfTwo { n: 8 });
        assert!(matches!(nsect_reduce(12).unwrap(), NsectReduction::OddPrime { p: 3, .. }));
        assert!(matches!(nsect_reduce(15).unwrap(), NsectReduction::OddPrime { p: 3, .. }));
        assert!(matches!(nsect_reduce(1).unwrap(), NsectReduction::PowerOfTwo { n: 1 }));
    }

    #[test]
    fn dense_families() {
        let f = dense_family_certificate(5, 4).unwrap();
        assert_eq!((f.a, f.b, f.n_gon_constructible), (1, -1, true));
        let f = dense_family_certificate(3, 2).unwrap();
        assert_eq!((f.a, f.b), (1, -1));
        assert!(dense_family_certificate(5, 10).is_err());
        for n in 1..40 {
            for m in 1..40 {
                if let Ok(f) = dense_family_certificate(n, m) {
                    assert_eq!(f.a * n as i64 + f.b * m as i64, 1);
                }
            }
        }
    }

    #[test]
    fn p3_bridge() {
        assert!(bridge_p3());
    }

    #[test]
    fn multiple_angle_identity_numeric() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for p in (3..=31).filter(|&p| is_prime(p)) {
            let body = psection_poly(p).unwrap().body;
            let prec = eval_precision(&body, 100);
            for _ in 0..100 {
                let theta =
                    Interval::from_rational(&Rational::new(rng.gen_range(-10_000i64..10_000), 1000).unwrap(), prec);
                let lhs = body.eval_interval(&theta.cos());
                let rhs = theta.mul_int(&BigInt::from(p)).cos();
                let diff = lhs.sub(&rhs);
                assert!(diff.contains_zero() && diff.width_below_pow2(84), "p = {p}");
            }
        }
    }
}
