use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Ring elements that support fraction-free elimination.
pub trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_mul(&self, o: &Self) -> Self;
    fn ring_sub(&self, o: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// `self / o`, known to be exact.
    fn div_exact(&self, o: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

impl ExactRing for IntPoly {
    fn ring_zero() -> Self {
        IntPoly::zero()
    }
    fn ring_one() -> Self {
        IntPoly::one()
    }
    fn ring_is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        IntPoly::div_exact(self, o).expect("Bareiss step is exact")
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det<T: ExactRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::ring_one();
    }
    let mut negate = false;
    let mut prev = T::ring_one();
    for k in 0..n - 1 {
        if m[k][k].ring_is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].ring_is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return T::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].ring_mul(&m[k][k]).ring_sub(&m[i][k].ring_mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.ring_neg()
    } else {
        d
    }
}

/// Sylvester matrix of `f` and `g`, both given by ascending coefficients.
pub fn sylvester<T: ExactRing>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(f, n), (g, m)] {
        for s in 0..shifts {
            let mut row = vec![T::ring_zero(); size];
            for (i, c) in coeffs.iter().rev().enumerate() {
                row[s + i] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Resultant of two integer polynomials.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    bareiss_det(sylvester(f.coeffs(), g.coeffs()))
}

/// Integer polynomial in `x` vanishing at `g(q^(1/m))`: the resultant
/// `Res_y(y^m - q, g(y) - x)`, made primitive with positive leading coefficient.
pub fn resultant_minpoly(m: u32, q: &Rational, g: &[Rational]) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::BadParameters("root index must be positive".into()));
    }
    let g_len = g.iter().rposition(|c| !c.is_zero()).map_or(1, |i| i + 1);
    let g = &g[..g_len];
    // v*y^m - u
    let mut f = vec![IntPoly::zero(); m as usize + 1];
    f[0] = IntPoly::constant(-q.num().clone());
    f[m as usize] = IntPoly::constant(q.den().clone());
    // L*g(y) - L*x
    let l = g.iter().fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.den()));
    let mut h: Vec<IntPoly> = g.iter().map(|c| IntPoly::constant(c.num() * (&l / c.den()))).collect();
    if h.is_empty() {
        h.push(IntPoly::zero());
    }
    h[0] = &h[0] - &IntPoly::monomial(l, 1);
    let r = bareiss_det(sylvester(&f, &h));
    let r = r.primitive_part();
    debug_assert!(r.leading().is_none_or(|c| c.is_positive()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Interval;

    fn rats(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| Rational::from_int(c)).collect()
    }

    fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut total = BigInt::zero();
        for c in 0..n {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = &m[0][c] * det_cofactor(&minor);
            if c % 2 == 0 {
                total += t;
            } else {
                total -= t;
            }
        }
        total
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for _ in 0..20 {
                let m: Vec<Vec<BigInt>> =
                    (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect()).collect();
                assert_eq!(bareiss_det(m.clone()), det_cofactor(&m));
            }
        }
    }

    #[test]
    fn trisection_resultant_is_cubic() {
        // a = f(2^(1/3)) = 2 - 3*2^(1/3)
        let r = resultant_minpoly(3, &Rational::from_int(2), &rats(&[0, -3, 0, 1])).unwrap();
        assert_eq!(r.degree(), Some(3));
        let x = Interval::root_of_rational(&Rational::from_int(2), 3, 200);
        let a = x.pow(3).sub(&x.mul_int(&BigInt::from(3)));
        let v = r.eval_interval(&a);
        assert!(v.contains_zero() && v.width_below_pow2(100));
    }

    #[test]
    fn sqrt_two_minpoly() {
        let r = resultant_minpoly(2, &Rational::from_int(2), &rats(&[0, 1])).unwrap();
        assert_eq!(r, IntPoly::from_i64(&[-2, 0, 1]));
        let r = resultant_minpoly(2, &Rational::new(1, 4).unwrap(), &rats(&[0, 1])).unwrap();
        assert_eq!(r, IntPoly::from_i64(&[-1, 0, 4]));
    }

    #[test]
    fn resultant_of_shared_root_is_zero() {
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        let g = IntPoly::from_i64(&[-1, 1]);
        assert!(resultant(&f, &g).is_zero());
        assert_eq!(resultant(&f, &IntPoly::from_i64(&[-2, 1])), BigInt::from(3));
    }
}
