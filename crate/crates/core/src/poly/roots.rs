use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntPoly, RatPoly};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ntheory::is_prime_big;

/// Eisenstein's criterion at `prime`. Errors if `prime` is not prime.
pub fn eisenstein_check(p: &IntPoly, prime: &BigInt) -> Result<bool> {
    if !is_prime_big(prime) {
        return Err(Error::NotPrime(prime.to_string()));
    }
    let Some(n) = p.degree() else { return Ok(false) };
    if n == 0 {
        return Ok(false);
    }
    let c = p.coeffs();
    if (&c[n] % prime).is_zero() {
        return Ok(false);
    }
    if c[..n].iter().any(|a| !(a % prime).is_zero()) {
        return Ok(false);
    }
    Ok(!(&c[0] % (prime * prime)).is_zero())
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        return crate::ntheory::divisors(small).into_iter().map(BigInt::from).collect();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All rational roots, sorted ascending without repetition.
pub fn rational_roots(p: &RatPoly) -> Vec<Rational> {
    let (_, q) = p.clear_denominators();
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let low = q.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let q = IntPoly::new(q.coeffs()[low..].to_vec());
    if q.degree().unwrap() > 0 {
        let lead = q.leading().unwrap().clone();
        let nums = positive_divisors(&q.coeff(0));
        let dens = positive_divisors(&lead);
        for u in &nums {
            for v in &dens {
                if !u.gcd(v).is_one() {
                    continue;
                }
                for s in [u.clone(), -u.clone()] {
                    let r = Rational::new(s, v.clone()).unwrap();
                    if q.eval_rational(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn eisenstein_examples() {
        let three = BigInt::from(3);
        assert!(eisenstein_check(&ip("-6 - 15*x + 5*x^3"), &three).unwrap());
        assert!(!eisenstein_check(&ip("-2 - 3*x + x^3"), &three).unwrap());
        assert!(!eisenstein_check(&ip("-9 - 3*x + x^3"), &three).unwrap());
        assert!(matches!(eisenstein_check(&ip("x"), &BigInt::from(4)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn roots_of_cubic() {
        let r = rational_roots(&"2 - 3*x + x^3".parse().unwrap());
        assert_eq!(r, vec![Rational::from_int(-2), Rational::from_int(1)]);
        let r = rational_roots(&"-1/4 + x^2".parse().unwrap());
        assert_eq!(r, vec!["-1/2".parse().unwrap(), "1/2".parse().unwrap()]);
        assert!(rational_roots(&"-2 + x^2".parse().unwrap()).is_empty());
        assert_eq!(rational_roots(&"x^3 - x^2".parse().unwrap()).len(), 2);
    }

    #[test]
    fn roots_brute_oracle() {
        // every root p/q with |p|,q <= 12 of products of linear factors
        for (a, b) in [(3i64, 2i64), (-5, 4), (7, 1), (0, 1)] {
            let f = &RatPoly::from_i64(&[-a, b]) * &RatPoly::from_i64(&[1, 0, 1]);
            let got = rational_roots(&f);
            let mut want = Vec::new();
            for q in 1..=12i64 {
                for p in -12..=12i64 {
                    let r = Rational::new(p, q).unwrap();
                    if f.eval(&r).is_zero() && !want.contains(&r) {
                        want.push(r);
                    }
                }
            }
            want.sort();
            assert_eq!(got, want);
        }
    }
}
