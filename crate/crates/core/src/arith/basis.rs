//! Heights measured in a non-standard basis, and an empirical check that two
//! basis choices give commensurate heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use super::{QuadElem, Radicand, Rational};
use crate::error::{Error, Result};
use crate::ntheory::{gcd3_i64, gcd_i64};

/// Height of `x` from its canonical integer coordinates in the basis `{w1, w2}`.
pub fn height_in_basis(x: &QuadElem, w1: &QuadElem, w2: &QuadElem) -> Result<BigInt> {
    let d = x.d();
    if w1.d() != d || w2.d() != d {
        return Err(Error::RadicandMismatch(w1.d().get(), w2.d().get()));
    }
    let coord = |q: &QuadElem| {
        (Rational::new(q.a1().clone(), q.b().clone()).unwrap(), Rational::new(q.a2().clone(), q.b().clone()).unwrap())
    };
    let (p1, q1) = coord(w1);
    let (p2, q2) = coord(w2);
    let (px, qx) = coord(x);
    let det = &(&p1 * &q2) - &(&p2 * &q1);
    if det.is_zero() {
        return Err(Error::DegenerateBasis);
    }
    let c1 = &(&(&px * &q2) - &(&p2 * &qx)) / &det;
    let c2 = &(&(&p1 * &qx) - &(&px * &q1)) / &det;
    let b = c1.den().lcm(c2.den());
    let a1 = c1.num() * (&b / c1.den());
    let a2 = c2.num() * (&b / c2.den());
    Ok(a1.abs().max(a2.abs()).max(b))
}

/// Outcome of an exhaustive commensurability sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommensurabilityReport {
    pub d: i64,
    pub radius: i64,
    /// Smallest integer D with h2/D <= h1 <= D*h2 on every element checked.
    pub factor: i64,
    pub ok: bool,
    pub checked: u64,
}

/// Basis change precomputed as integer data: `coords(x) = L*adj(M)*(a1, a2) / (det*b)`.
struct BasisChange {
    adj: [[i128; 2]; 2],
    scale: i128,
    det: i128,
}

impl BasisChange {
    fn new(w1: &QuadElem, w2: &QuadElem) -> Result<Self> {
        let l = w1.b().lcm(w2.b());
        let to_i = |v: BigInt| -> Result<i128> {
            i128::try_from(v).map_err(|_| Error::BadParameters("basis entries too large".into()))
        };
        let m11 = to_i(w1.a1() * (&l / w1.b()))?;
        let m21 = to_i(w1.a2() * (&l / w1.b()))?;
        let m12 = to_i(w2.a1() * (&l / w2.b()))?;
        let m22 = to_i(w2.a2() * (&l / w2.b()))?;
        let det = m11 * m22 - m12 * m21;
        if det == 0 {
            return Err(Error::DegenerateBasis);
        }
        Ok(BasisChange { adj: [[m22, -m12], [-m21, m11]], scale: to_i(l)?, det })
    }

    fn height(&self, a1: i64, a2: i64, b: i64) -> i64 {
        let (a1, a2) = (a1 as i128, a2 as i128);
        let mut v1 = self.scale * (self.adj[0][0] * a1 + self.adj[0][1] * a2);
        let mut v2 = self.scale * (self.adj[1][0] * a1 + self.adj[1][1] * a2);
        let mut den = self.det * b as i128;
        if den < 0 {
            v1 = -v1;
            v2 = -v2;
            den = -den;
        }
        let g = v1.gcd(&v2).gcd(&den);
        let h = (v1 / g).abs().max((v2 / g).abs()).max(den / g);
        h as i64
    }
}

/// Compares standard-basis heights against heights in `alt_basis` over every element
/// of standard height `<= radius`; reports the smallest sufficient integer factor.
pub fn verify_commensurability(
    d: i64,
    alt_basis: (&QuadElem, &QuadElem),
    radius: i64,
    ceiling: i64,
) -> Result<CommensurabilityReport> {
    let rad = Radicand::new(d)?;
    if alt_basis.0.d() != rad || alt_basis.1.d() != rad {
        return Err(Error::RadicandMismatch(d, alt_basis.0.d().get()));
    }
    let change = BasisChange::new(alt_basis.0, alt_basis.1)?;
    // max ratio tracked as a fraction num/den (max of h1/h2 and h2/h1)
    let (mut worst_num, mut worst_den) = (1i64, 1i64);
    let mut checked = 0u64;
    for b in 1..=radius {
        for a2 in -radius..=radius {
            let g2 = gcd_i64(a2, b);
            for a1 in -radius..=radius {
                if gcd_i64(a1, g2) != 1 {
                    continue;
                }
                debug_assert_eq!(gcd3_i64(a1, a2, b), 1);
                checked += 1;
                let h1 = a1.abs().max(a2.abs()).max(b);
                let h2 = change.height(a1, a2, b);
                let (n, m) = if h1 >= h2 { (h1, h2) } else { (h2, h1) };
                if (n as i128) * (worst_den as i128) > (worst_num as i128) * (m as i128) {
                    worst_num = n;
                    worst_den = m;
                }
            }
        }
    }
    let factor = (worst_num + worst_den - 1) / worst_den;
    Ok(CommensurabilityReport { d, radius, factor, ok: factor <= ceiling, checked })
}
