//! Small-integer number theory helpers shared by the counting and certificate code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn gcd3_i64(a: i64, b: i64, c: i64) -> i64 {
    gcd_i64(gcd_i64(a, b), c)
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Trial-division factorization into (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn is_prime_big(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    match u64::try_from(n) {
        Ok(v) => is_prime(v),
        Err(_) => {
            // trial division on big values; only tiny primes are ever passed in practice
            let mut p = BigInt::from(2);
            while &(&p * &p) <= n {
                if (n % &p).is_zero() {
                    return false;
                }
                p += 1;
            }
            true
        }
    }
}

/// Squarefree test by trial division up to sqrt(n).
pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Squarefree divisors of n with their Moebius signs.
pub fn signed_squarefree_divisors(n: u64) -> Vec<(u64, i64)> {
    let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    let mut out = vec![(1u64, 1i64)];
    for p in primes {
        let len = out.len();
        for i in 0..len {
            let (d, s) = out[i];
            out.push((d * p, -s));
        }
    }
    out
}

/// Number of integers in [1, limit] coprime to n.
pub fn coprime_upto(n: u64, limit: i64, sqfree: &[(u64, i64)]) -> i64 {
    if limit <= 0 {
        return 0;
    }
    debug_assert!(sqfree.iter().all(|&(d, _)| n.is_multiple_of(d)));
    sqfree.iter().map(|&(d, s)| s * (limit / d as i64)).sum()
}

pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Extended Euclid on machine integers: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Largest integer r with r^k <= n, for n >= 0.
pub fn iroot_floor(n: &BigInt, k: u32) -> BigInt {
    assert!(!n.is_negative());
    n.nth_root(k)
}

/// Exact integer k-th root if n is a perfect k-th power (sign allowed for odd k).
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_phi() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(6));
        assert!(!is_squarefree(12));
        assert!(is_squarefree(1));
    }

    #[test]
    fn coprime_counts_match_direct() {
        for n in 1..60u64 {
            let sq = signed_squarefree_divisors(n);
            for lim in 0..80i64 {
                let direct = (1..=lim).filter(|&a| gcd_i64(a, n as i64) == 1).count() as i64;
                assert_eq!(coprime_upto(n, lim, &sq), direct);
            }
        }
    }

    #[test]
    fn bezout() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, gcd_i64(a, b));
            }
        }
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_root(&BigInt::from(26), 3), None);
        assert_eq!(iroot_floor(&BigInt::from(26), 3), BigInt::from(2));
        assert_eq!(binomial(10, 3), BigInt::from(120));
    }
}
