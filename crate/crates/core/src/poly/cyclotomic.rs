use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::ntheory::{divisors, euler_phi};

/// The m-th cyclotomic polynomial.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut table: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for e in divisors(m) {
        let mut p = &IntPoly::monomial(1, e as usize) - &IntPoly::one();
        for (&k, phi) in &table {
            if e % k == 0 {
                p = p.div_exact(phi).expect("cyclotomic factor divides");
            }
        }
        table.insert(e, p);
    }
    table.remove(&m).unwrap()
}

/// Minimal polynomial of `2 cos(2 pi / m)`.
pub fn cos_minimal_poly(m: u64) -> IntPoly {
    match m {
        0 => panic!("cos_minimal_poly needs m >= 1"),
        1 => return IntPoly::from_i64(&[-2, 1]),
        2 => return IntPoly::from_i64(&[2, 1]),
        _ => {}
    }
    // Phi_m(z) = z^h * Psi_m(z + 1/z); peel off powers of (z + 1/z) from the top.
    let phi = cyclotomic(m);
    let n = phi.degree().unwrap();
    let h = n / 2;
    // work with Laurent coefficients c[k] for z^(k - h)
    let mut c: Vec<BigInt> = phi.coeffs().to_vec();
    let mut out = vec![BigInt::zero(); h + 1];
    for i in (0..=h).rev() {
        let lead = c[h + i].clone();
        if lead.is_zero() {
            continue;
        }
        // subtract lead * (z + 1/z)^i
        let mut binom = BigInt::from(1);
        for j in 0..=i {
            let exp = h + i - 2 * j;
            c[exp] -= &lead * &binom;
            binom = binom * BigInt::from(i - j) / BigInt::from(j + 1);
        }
        out[i] = lead;
    }
    debug_assert!(c.iter().all(Zero::is_zero));
    let p = IntPoly::new(out);
    debug_assert_eq!(p.degree(), Some((euler_phi(m) / 2) as usize));
    p
}

/// `C_0 = 2`, `C_1 = x`, `C_{n+1} = x C_n - C_{n-1}`, so `C_n(z + 1/z) = z^n + z^-n`.
pub fn chebyshev_like(n: u64) -> IntPoly {
    let mut a = IntPoly::constant(2);
    if n == 0 {
        return a;
    }
    let mut b = IntPoly::x();
    let x = IntPoly::x();
    for _ in 1..n {
        let c = &(&x * &b) - &a;
        a = b;
        b = c;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::ntheory::gcd_i64;
    use crate::numeric::Interval;
    use crate::poly::{rational_roots, resultant, RatPoly};

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        // first cyclotomic with a coefficient outside {-1,0,1}
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn known_cos_polys() {
        assert_eq!(cos_minimal_poly(3), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cos_minimal_poly(4), IntPoly::from_i64(&[0, 1]));
        assert_eq!(cos_minimal_poly(5), IntPoly::from_i64(&[-1, 1, 1]));
        assert_eq!(cos_minimal_poly(8), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(cos_minimal_poly(9), IntPoly::from_i64(&[1, -3, 0, 1]));
    }

    #[test]
    fn chebyshev_identity() {
        assert_eq!(chebyshev_like(2), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(chebyshev_like(3), IntPoly::from_i64(&[0, -3, 0, 1]));
        // C_n(C_m) = C_{nm}
        for n in 1..6 {
            for m in 1..6 {
                assert_eq!(chebyshev_like(n).compose(&chebyshev_like(m)), chebyshev_like(n * m));
            }
        }
    }

    #[test]
    fn cos_polys_vanish_on_all_conjugates() {
        let prec = 160;
        let pi = Interval::pi(prec);
        for m in 3..=60u64 {
            let psi = cos_minimal_poly(m);
            for j in 1..m {
                if gcd_i64(j as i64, m as i64) != 1 {
                    continue;
                }
                let t = pi.mul_rational(&Rational::new(2 * j as i64, m as i64).unwrap());
                let x = t.cos().mul_int(&BigInt::from(2));
                let v = psi.eval_interval(&x);
                assert!(v.contains_zero(), "m={m} j={j}");
                assert!(v.width_below_pow2(100), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn cos_polys_irreducible_up_to_60() {
        // C_m(x) - 2 = (x - 2) (x + 2)^[m even] * prod_{e | m, e >= 3} Psi_e^2
        for m in 1..=60u64 {
            let mut prod = cos_minimal_poly(1);
            if m % 2 == 0 {
                prod = &prod * &cos_minimal_poly(2);
            }
            for e in divisors(m).into_iter().filter(|&e| e >= 3) {
                let p = cos_minimal_poly(e);
                prod = &prod * &(&p * &p);
            }
            assert_eq!(prod, &chebyshev_like(m) - &IntPoly::constant(2), "m={m}");
        }
        let polys: Vec<IntPoly> = (1..=60).map(cos_minimal_poly).collect();
        for (i, p) in polys.iter().enumerate() {
            let deg = p.degree().unwrap();
            if deg <= 3 {
                // reducible of degree <= 3 means a rational root
                assert!(deg == 1 || rational_roots(&RatPoly::from(p)).is_empty(), "m={}", i + 1);
            }
            // distinct orbits never share a root
            for q in &polys[..i] {
                assert!(!resultant(p, q).is_zero());
            }
        }
    }
}
