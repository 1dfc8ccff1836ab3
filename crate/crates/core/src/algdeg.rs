//! Degrees of `2 cos(pi/2^n)`, `2 sin(pi/2^n)`, `2 cos(pi/3 ± pi/2^n)`, the tower
//! `p_1 = x^2 - 2`, `p_n = p_1(p_(n-1))`, and the doubling identities between them.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{QuadElem, Radicand, Rational};
use crate::error::{Error, Result};
use crate::ntheory::{euler_phi, gcd_i64};
use crate::numeric::Interval;
use crate::poly::{chebyshev_like, cos_minimal_poly, eisenstein_check, IntPoly};

/// `p_n`, refusing degrees above `degree_cap`.
pub fn p_tower(n: u32, degree_cap: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::BadParameters("tower index starts at 1".into()));
    }
    let degree = 1u128 << n.min(127);
    if n >= 127 || degree > degree_cap as u128 {
        return Err(Error::CapExceeded { needed: degree, cap: degree_cap as u128 });
    }
    let p1 = IntPoly::from_i64(&[-2, 0, 1]);
    let mut p = p1.clone();
    for _ in 1..n {
        p = p1.compose(&p);
    }
    Ok(p)
}

/// Precision that keeps `bits` correct bits when evaluating `p` on `[-2, 2]`.
fn precision_for(p: &IntPoly, bits: u32) -> u32 {
    let c = p.coeffs().iter().map(|c| c.abs().bits()).max().unwrap_or(1) as u32;
    let deg = p.degree().unwrap_or(0) as u32;
    bits + c + deg + 16
}

/// `2 cos(2 pi j / m)` as an interval.
pub fn two_cos(j: i64, m: u64, prec: u32) -> Interval {
    let t = Interval::pi(prec).mul_rational(&Rational::new(2 * j, m as i64).expect("m > 0"));
    t.cos().mul_int(&BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngleNumber {
    pub j: i64,
    pub m: u64,
    pub degree: usize,
    pub minpoly: IntPoly,
    /// `|minpoly(value)| < 10^-25` under certified evaluation.
    pub root_verified: bool,
}

/// Degree over Q of `2 cos(2 pi j / m)`: `phi(m)/2` for `m >= 3`, else 1.
pub fn angle_degree(j: i64, m: u64) -> Result<AngleNumber> {
    if m == 0 {
        return Err(Error::BadParameters("m must be positive".into()));
    }
    if gcd_i64(j, m as i64) != 1 {
        return Err(Error::NotCoprime(j.unsigned_abs(), m));
    }
    let minpoly = cos_minimal_poly(m);
    let degree = minpoly.degree().expect("nonzero");
    let expected = if m <= 2 { 1 } else { euler_phi(m) / 2 };
    assert_eq!(degree as u64, expected);
    let prec = precision_for(&minpoly, 100);
    let v = minpoly.eval_interval(&two_cos(j, m, prec));
    let root_verified = v.contains_zero() && v.width_below_pow2(84);
    Ok(AngleNumber { j, m, degree, minpoly, root_verified })
}

/// `(j, m)` with `c_n = 2 cos(2 pi j / m)`.
pub fn cn_angle(n: u32) -> (i64, u64) {
    ((1i64 << n) + 3, 3 << (n + 1))
}

/// `(j, m)` with `d_n = 2 cos(2 pi j / m)`, `0 < j < m`.
pub fn dn_angle(n: u32) -> (i64, u64) {
    let m = 3u64 << (n + 1);
    let j = (1i64 << n) - 3;
    (j.abs(), m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnReport {
    pub n: u32,
    pub j: i64,
    pub m: u64,
    pub degree: usize,
    pub expected: u64,
    pub root_verified: bool,
    pub ok: bool,
}

pub fn cn_degree_check(n: u32, degree_cap: u64) -> Result<CnReport> {
    if n == 0 {
        return Err(Error::BadParameters("n starts at 1".into()));
    }
    let expected = 1u64 << n.min(63);
    if n >= 63 || expected > degree_cap {
        return Err(Error::CapExceeded { needed: expected as u128, cap: degree_cap as u128 });
    }
    let (j, m) = cn_angle(n);
    let a = angle_degree(j, m)?;
    Ok(CnReport {
        n,
        j,
        m,
        degree: a.degree,
        expected,
        root_verified: a.root_verified,
        ok: a.degree as u64 == expected && a.root_verified,
    })
}

/// `x + y sqrt(2)` with `x, y ∈ Q(sqrt 3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biquad {
    x: QuadElem,
    y: QuadElem,
}

fn r3() -> Radicand {
    Radicand::new(3).expect("3 is squarefree")
}

impl Biquad {
    pub fn new(x: QuadElem, y: QuadElem) -> Self {
        Biquad { x, y }
    }

    pub fn int(n: i64) -> Self {
        Biquad::new(QuadElem::from_int(n, r3()), QuadElem::from_int(0, r3()))
    }

    /// `(a + b sqrt 3 + (c + e sqrt 3) sqrt 2) / den`
    pub fn from_parts(a: i64, b: i64, c: i64, e: i64, den: i64) -> Self {
        Biquad::new(
            QuadElem::canonicalize(a, b, den, 3).expect("den > 0"),
            QuadElem::canonicalize(c, e, den, 3).expect("den > 0"),
        )
    }

    pub fn sqrt3() -> Self {
        Biquad::new(QuadElem::sqrt_d(r3()), QuadElem::from_int(0, r3()))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Biquad) -> Biquad {
        Biquad::new(self.x.checked_add(&o.x).unwrap(), self.y.checked_add(&o.y).unwrap())
    }

    pub fn sub(&self, o: &Biquad) -> Biquad {
        Biquad::new(self.x.checked_sub(&o.x).unwrap(), self.y.checked_sub(&o.y).unwrap())
    }

    pub fn mul(&self, o: &Biquad) -> Biquad {
        let two = QuadElem::from_int(2, r3());
        let xx = self.x.checked_mul(&o.x).unwrap();
        let yy = self.y.checked_mul(&o.y).unwrap().checked_mul(&two).unwrap();
        let xy = self.x.checked_mul(&o.y).unwrap().checked_add(&self.y.checked_mul(&o.x).unwrap()).unwrap();
        Biquad::new(xx.checked_add(&yy).unwrap(), xy)
    }

    pub fn eval(p: &IntPoly, v: &Biquad) -> Biquad {
        p.coeffs().iter().rev().fold(Biquad::int(0), |acc, c| {
            acc.mul(v).add(&Biquad::new(
                QuadElem::from_rational(&Rational::from_int(c.clone()), r3()),
                QuadElem::from_int(0, r3()),
            ))
        })
    }

    pub fn to_interval(&self, prec: u32) -> Interval {
        let s3 = Interval::from_int(3, prec).sqrt();
        let s2 = Interval::from_int(2, prec).sqrt();
        let q = |e: &QuadElem| {
            let b = Rational::from_int(e.b().clone());
            Interval::from_rational(&(&Rational::from_int(e.a1().clone()) / &b), prec)
                .add(&s3.mul_rational(&(&Rational::from_int(e.a2().clone()) / &b)))
        };
        q(&self.x).add(&s2.mul(&q(&self.y)))
    }
}

impl std::fmt::Display for Biquad {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}*sqrt(2)", self.x, self.y)
    }
}

/// Arithmetic shared by the exact and the interval evaluation of the identities.
trait Val: Clone {
    fn int(n: i64, prec: u32) -> Self;
    fn half(&self) -> Self;
    fn sqrt3(prec: u32) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
}

impl Val for Biquad {
    fn int(n: i64, _: u32) -> Self {
        Biquad::int(n)
    }
    fn half(&self) -> Self {
        self.mul(&Biquad::from_parts(1, 0, 0, 0, 2))
    }
    fn sqrt3(_: u32) -> Self {
        Biquad::sqrt3()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

impl Val for Interval {
    fn int(n: i64, prec: u32) -> Self {
        Interval::from_int(n, prec)
    }
    fn half(&self) -> Self {
        self.div_int(&BigInt::from(2))
    }
    fn sqrt3(prec: u32) -> Self {
        Interval::from_int(3, prec).sqrt()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

/// `(a_n, b_n, c_n, d_n)`.
#[derive(Clone, Debug)]
struct Row<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

pub const IDENTITIES: [&str; 8] = [
    "a[n-1] = a[n]^2 - 2",
    "a[n-1] = 2 - b[n]^2",
    "b[n-1] = a[n] b[n]",
    "c[n] = a[n]/2 - (sqrt3/2) b[n]",
    "d[n] = a[n]/2 + (sqrt3/2) b[n]",
    "d[n-1] = 2 - c[n]^2",
    "a[n-1] = c[n] d[n] + 1",
    "c[n-1] = 2 - d[n]^2",
];

/// `lhs - rhs` for each identity, given rows `n-1` and `n`.
fn residuals<T: Val>(prev: &Row<T>, cur: &Row<T>, prec: u32) -> [T; 8] {
    let two = T::int(2, prec);
    let one = T::int(1, prec);
    let s3b = T::sqrt3(prec).half().times(&cur.b);
    let ah = cur.a.half();
    [
        prev.a.minus(&cur.a.times(&cur.a).minus(&two)),
        prev.a.minus(&two.minus(&cur.b.times(&cur.b))),
        prev.b.minus(&cur.a.times(&cur.b)),
        cur.c.minus(&ah.minus(&s3b)),
        cur.d.minus(&ah.plus(&s3b)),
        prev.d.minus(&two.minus(&cur.c.times(&cur.c))),
        prev.a.minus(&cur.c.times(&cur.d).plus(&one)),
        prev.c.minus(&two.minus(&cur.d.times(&cur.d))),
    ]
}

/// Exact values for `n <= 2`.
fn exact_row(n: u32) -> Row<Biquad> {
    let b = Biquad::from_parts;
    match n {
        0 => Row { a: b(-2, 0, 0, 0, 1), b: b(0, 0, 0, 0, 1), c: b(-1, 0, 0, 0, 1), d: b(-1, 0, 0, 0, 1) },
        1 => Row { a: b(0, 0, 0, 0, 1), b: b(2, 0, 0, 0, 1), c: b(0, -1, 0, 0, 1), d: b(0, 1, 0, 0, 1) },
        // (1 - sqrt3)/sqrt2 = (sqrt2 - sqrt6)/2
        2 => Row { a: b(0, 0, 1, 0, 1), b: b(0, 0, 1, 0, 1), c: b(0, 0, 1, -1, 2), d: b(0, 0, 1, 1, 2) },
        _ => unreachable!("exact rows stop at n = 2"),
    }
}

/// Trigonometric definitions, as intervals.
fn interval_row(n: u32, prec: u32) -> Row<Interval> {
    let pi = Interval::pi(prec);
    let t = pi.div_int(&(BigInt::one() << n));
    let third = pi.div_int(&BigInt::from(3));
    let two = BigInt::from(2);
    Row {
        a: t.cos().mul_int(&two),
        b: t.sin().mul_int(&two),
        c: third.add(&t).cos().mul_int(&two),
        d: third.sub(&t).cos().mul_int(&two),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: u32,
    pub method: String,
    /// Upper bound on `|lhs - rhs|`; `0` for exact checks.
    pub residual_bound: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub name: String,
    pub n: u32,
    pub value: String,
    pub minpoly_root: bool,
    pub numeric_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub table: Vec<TableEntry>,
}

impl IdentityReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok) && self.table.iter().all(|t| t.minpoly_root && t.numeric_match)
    }
}

fn interval_checks(n: u32, prec: u32) -> Vec<(bool, Interval)> {
    let prev = interval_row(n - 1, prec);
    let cur = interval_row(n, prec);
    residuals(&prev, &cur, prec).into_iter().map(|r| (r.contains_zero() && r.width_below_pow2(64), r)).collect()
}

/// The table for `n <= 2`: each entry is a root of the minimal polynomial of its angle
/// and lies inside the interval of its trigonometric definition.
pub fn value_table() -> Vec<TableEntry> {
    let mut out = Vec::new();
    for n in 0..=2u32 {
        let row = exact_row(n);
        let num = interval_row(n, 120);
        // (j, m) with value 2 cos(2 pi j / m)
        // 2 sin(pi/2^n) = 2 cos(2 pi (2^(n-1) - 1) / 2^(n+1)); b_0 = 2 cos(pi/2)
        let b_angle = if n == 0 { (1, 4) } else { reduce(((1i64 << (n - 1)) - 1, 1u64 << (n + 1))) };
        let angles = [
            ("a", &row.a, &num.a, (1i64, 2u64 << n)),
            ("b", &row.b, &num.b, b_angle),
            ("c", &row.c, &num.c, reduce(cn_angle(n))),
            ("d", &row.d, &num.d, reduce(dn_angle(n))),
        ];
        for (name, exact, approx, (_, m)) in angles {
            let psi = cos_minimal_poly(m);
            let approx_check = exact.to_interval(120).sub(approx);
            out.push(TableEntry {
                name: format!("{name}{n}"),
                n,
                value: exact.to_string(),
                minpoly_root: Biquad::eval(&psi, exact).is_zero(),
                numeric_match: approx_check.contains_zero() && approx_check.width_below_pow2(64),
            });
        }
    }
    out
}

fn reduce((j, m): (i64, u64)) -> (i64, u64) {
    let g = gcd_i64(j, m as i64);
    (j / g, m / g as u64)
}

/// All eight identities for `1 <= n <= max_n`: exactly for `n <= 2`, otherwise with
/// certified intervals at 100 bits (200 on an inconclusive result).
pub fn identity_suite(max_n: u32) -> IdentityReport {
    let mut checks = Vec::new();
    for n in 1..=max_n {
        if n <= 2 {
            let res = residuals(&exact_row(n - 1), &exact_row(n), 0);
            for (name, r) in IDENTITIES.iter().zip(res) {
                checks.push(IdentityCheck {
                    identity: name.to_string(),
                    n,
                    method: "exact".into(),
                    residual_bound: if r.is_zero() { "0".into() } else { r.to_string() },
                    ok: r.is_zero(),
                });
            }
        } else {
            let mut res = interval_checks(n, 100);
            let mut method = "interval-100";
            if res.iter().any(|(ok, _)| !ok) {
                res = interval_checks(n, 200);
                method = "interval-200";
            }
            for (name, (ok, r)) in IDENTITIES.iter().zip(res) {
                checks.push(IdentityCheck {
                    identity: name.to_string(),
                    n,
                    method: method.into(),
                    residual_bound: format!("{:e}", r.mag().to_f64()),
                    ok,
                });
            }
        }
    }
    IdentityReport { checks, table: value_table() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub n: u32,
    /// `x^(2^n) + 2x q(x) ± 2`
    pub shape_ok: bool,
    pub eisenstein_ok: bool,
    /// `p_k(a_n) = a_(n-k)` and the companion statement for `b_n`, for every `k <= n`
    pub values_ok: bool,
    pub values_method: String,
    pub chebyshev_ok: bool,
}

impl TowerReport {
    pub fn all_ok(&self) -> bool {
        self.shape_ok && self.eisenstein_ok && self.values_ok && self.chebyshev_ok
    }
}

pub fn tower_checks(n: u32, degree_cap: u64) -> Result<TowerReport> {
    let p = p_tower(n, degree_cap)?;
    let top = 1usize << n;
    let c = p.coeffs();
    let two = BigInt::from(2);
    let shape_ok = p.degree() == Some(top)
        && c[top].is_one()
        && c[0].abs() == two
        && c[1..top].iter().all(|v| (v % &two) == BigInt::from(0));
    let eisenstein_ok = eisenstein_check(&p, &two)?;
    let chebyshev_ok = p == chebyshev_like(1u64 << n);
    let towers: Vec<IntPoly> = (1..=n).map(|k| p_tower(k, degree_cap)).collect::<Result<_>>()?;
    let (values_ok, values_method) = if n <= 2 {
        let ok = (1..=n).all(|k| {
            let pk = &towers[k as usize - 1];
            let a = Biquad::eval(pk, &exact_row(n).a) == exact_row(n - k).a;
            let want_b = if k == 1 { exact_row(n - 1).a.mul(&Biquad::int(-1)) } else { exact_row(n - k).a };
            a && Biquad::eval(pk, &exact_row(n).b) == want_b
        });
        (ok, "exact")
    } else {
        let ok = (1..=n).all(|k| {
            let pk = &towers[k as usize - 1];
            let prec = precision_for(pk, 100);
            let row = interval_row(n, prec);
            let lower = interval_row(n - k, prec);
            let da = pk.eval_interval(&row.a).sub(&lower.a);
            let want_b = if k == 1 { interval_row(n - 1, prec).a.neg() } else { lower.a.clone() };
            let db = pk.eval_interval(&row.b).sub(&want_b);
            [da, db].iter().all(|v| v.contains_zero() && v.width_below_pow2(64))
        });
        (ok, "interval")
    };
    Ok(TowerReport { n, shape_ok, eisenstein_ok, values_ok, values_method: values_method.into(), chebyshev_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn tower_examples() {
        assert_eq!(p_tower(1, 1 << 20).unwrap(), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(p_tower(2, 1 << 20).unwrap(), IntPoly::from_i64(&[2, 0, -4, 0, 1]));
        assert_eq!(p_tower(3, 1 << 20).unwrap(), IntPoly::from_i64(&[2, 0, -16, 0, 20, 0, -8, 0, 1]));
        assert!(matches!(p_tower(12, 1024), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn tower_reports() {
        for n in 1..=10 {
            let r = tower_checks(n, 1 << 20).unwrap();
            assert!(r.all_ok(), "{r:?}");
            assert_eq!(r.values_method, if n <= 2 { "exact" } else { "interval" });
        }
        // p_2(sqrt 2) = -2
        let v = Biquad::eval(&p_tower(2, 16).unwrap(), &Biquad::from_parts(0, 0, 1, 0, 1));
        assert_eq!(v, Biquad::int(-2));
    }

    #[test]
    fn tower_doubles_angles() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for n in 1..=10 {
            let p = p_tower(n, 1 << 20).unwrap();
            let prec = precision_for(&p, 100);
            for _ in 0..50 {
                let theta = Interval::from_rational(&Rational::new(rng.gen_range(-7000i64..7000), 1000).unwrap(), prec);
                let x = theta.cos().mul_int(&BigInt::from(2));
                let want = theta.mul_int(&(BigInt::one() << n)).cos().mul_int(&BigInt::from(2));
                let diff = p.eval_interval(&x).sub(&want);
                assert!(diff.contains_zero() && diff.width_below_pow2(84), "n = {n}");
            }
        }
    }

    #[test]
    fn angle_degrees() {
        let a = angle_degree(1, 12).unwrap();
        assert_eq!((a.degree, a.minpoly.clone()), (2, IntPoly::from_i64(&[-3, 0, 1])));
        assert!(a.root_verified);
        assert_eq!(angle_degree(1, 1).unwrap().degree, 1);
        let a = angle_degree(7, 24).unwrap();
        assert_eq!(a.degree, 4);
        assert!(a.root_verified);
        assert!(matches!(angle_degree(2, 4), Err(Error::NotCoprime(2, 4))));
        for n in 1..=10u32 {
            let a = angle_degree(1, 2 << n).unwrap();
            assert_eq!(a.degree, 1 << (n - 1));
            assert!(a.root_verified);
        }
    }

    #[test]
    fn cn_and_dn_degrees() {
        for n in 1..=8 {
            let r = cn_degree_check(n, 1 << 12).unwrap();
            assert!(r.ok, "{r:?}");
            let (j, m) = dn_angle(n);
            let d = angle_degree(j, m).unwrap();
            assert_eq!(d.degree, 1 << n);
            assert!(d.root_verified);
        }
        assert_eq!(cn_degree_check(1, 16).unwrap().degree, 2);
        assert_eq!(cn_degree_check(2, 16).unwrap().degree, 4);
        assert!(matches!(cn_degree_check(9, 256), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn identities_and_table() {
        let rep = identity_suite(10);
        assert_eq!(rep.checks.len(), 80);
        for c in &rep.checks {
            assert!(c.ok, "{c:?}");
        }
        assert_eq!(rep.table.len(), 12);
        for t in &rep.table {
            assert!(t.minpoly_root && t.numeric_match, "{t:?}");
        }
        let d1 = rep.checks.iter().find(|c| c.n == 2 && c.identity == IDENTITIES[5]).unwrap();
        assert_eq!(d1.method, "exact");
    }
}
