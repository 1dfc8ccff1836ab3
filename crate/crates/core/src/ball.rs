//! Height balls `B_K(R)`: enumeration in `(b, a1, a2)` order, exact counts, interval
//! restrictions, and the inner box `Q(R)` used for lower bounds.

use std::cmp::Ordering;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{sign_surd_i128, Elem, Field, QuadElem, Rational};
use crate::coprime::{sieve_count, CountBox, Side};
use crate::error::{Error, Result};
use crate::ntheory::{binomial, coprime_upto, gcd_i64, signed_squarefree_divisors};

/// Integer coordinates `(a1 + a2 sqrt d) / b`; `a2 = 0` over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coords {
    pub b: i64,
    pub a1: i64,
    pub a2: i64,
}

impl Coords {
    pub fn height(&self) -> i64 {
        self.a1.abs().max(self.a2.abs()).max(self.b)
    }

    pub fn to_elem(&self, field: Field) -> Elem {
        match field {
            Field::Rational => Elem::Rational(Rational::new(self.a1, self.b).expect("b > 0")),
            Field::Quadratic(d) => {
                Elem::Quadratic(QuadElem::canonicalize(self.a1, self.a2, self.b, d.get()).expect("valid radicand"))
            }
        }
    }

    /// Coordinates of an element whose parts fit in i64.
    pub fn from_elem(x: &Elem) -> Option<Coords> {
        match x {
            Elem::Rational(r) => Some(Coords { b: r.den().to_i64()?, a1: r.num().to_i64()?, a2: 0 }),
            Elem::Quadratic(q) => Some(Coords { b: q.b().to_i64()?, a1: q.a1().to_i64()?, a2: q.a2().to_i64()? }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightBall {
    pub field: Field,
    pub radius: Rational,
}

impl HeightBall {
    pub fn new(field: Field, radius: Rational) -> Self {
        HeightBall { field, radius }
    }

    pub fn with_int(field: Field, r: i64) -> Self {
        HeightBall::new(field, Rational::from_int(r))
    }

    /// Largest admissible coordinate, `floor(R)` clamped at 0.
    pub fn bound(&self) -> i64 {
        self.radius.floor().to_i64().unwrap_or(i64::MAX).max(0)
    }
}

/// Closed interval `[lo, hi]` with machine-size rational endpoints `(num, den)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    lo: (i128, i128),
    hi: (i128, i128),
}

impl Window {
    pub fn new(lo: &Rational, hi: &Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::BadParameters(format!("empty interval [{lo}, {hi}]")));
        }
        let conv = |r: &Rational| -> Result<(i128, i128)> {
            match (r.num().to_i64(), r.den().to_i64()) {
                (Some(n), Some(d)) => Ok((n as i128, d as i128)),
                _ => Err(Error::BadParameters(format!("interval endpoint {r} is too large"))),
            }
        };
        Ok(Window { lo: conv(lo)?, hi: conv(hi)? })
    }

    pub fn symmetric(t: i64) -> Self {
        Window { lo: (-(t as i128), 1), hi: (t as i128, 1) }
    }

    /// Integers `a2` with `lo*b <= a1 + a2 sqrt(d) <= hi*b`; over Q (d = 0) the range for `a1`.
    fn surd_range(&self, d: i64, b: i64, a1: i64) -> (i64, i64) {
        let d = d as i128;
        let (b, a1) = (b as i128, a1 as i128);
        // sign(q a1 - p b + q t sqrt d) for the endpoint p/q
        let above = |(p, q): (i128, i128), t: i128| sign_surd_i128(q * a1 - p * b, q * t, d);
        let est = |(p, q): (i128, i128)| ((p as f64 / q as f64) * b as f64 - a1 as f64) / (d as f64).sqrt();
        let mut lo_t = est(self.lo).ceil() as i128;
        while above(self.lo, lo_t - 1) != Ordering::Less {
            lo_t -= 1;
        }
        while above(self.lo, lo_t) == Ordering::Less {
            lo_t += 1;
        }
        let mut hi_t = est(self.hi).floor() as i128;
        while above(self.hi, hi_t + 1) != Ordering::Greater {
            hi_t += 1;
        }
        while above(self.hi, hi_t) == Ordering::Greater {
            hi_t -= 1;
        }
        (lo_t as i64, hi_t as i64)
    }

    fn rational_range(&self, b: i64) -> (i64, i64) {
        let b = b as i128;
        let (lp, lq) = self.lo;
        let (hp, hq) = self.hi;
        ((lp * b).div_euclid(lq) + ((lp * b).rem_euclid(lq) != 0) as i128, (hp * b).div_euclid(hq)).clamp_pair()
    }
}

trait ClampPair {
    fn clamp_pair(self) -> (i64, i64);
}

impl ClampPair for (i128, i128) {
    fn clamp_pair(self) -> (i64, i64) {
        let c = |v: i128| v.clamp(i64::MIN as i128 / 2, i64::MAX as i128 / 2) as i64;
        (c(self.0), c(self.1))
    }
}

fn radicand(field: Field) -> i64 {
    field.radicand().unwrap_or(0)
}

/// All coordinates in the ball with this denominator, ordered by `(a1, a2)`.
pub fn coords_for_b(field: Field, r: i64, b: i64, window: Option<&Window>) -> Vec<Coords> {
    let mut out = Vec::new();
    match field {
        Field::Rational => {
            let (mut lo, mut hi) = (-r, r);
            if let Some(w) = window {
                let (l, h) = w.rational_range(b);
                lo = lo.max(l);
                hi = hi.min(h);
            }
            for a1 in lo..=hi {
                if gcd_i64(a1, b) == 1 {
                    out.push(Coords { b, a1, a2: 0 });
                }
            }
        }
        Field::Quadratic(_) => {
            let d = radicand(field);
            for a1 in -r..=r {
                let g = gcd_i64(a1, b);
                let (mut lo, mut hi) = (-r, r);
                if let Some(w) = window {
                    let (l, h) = w.surd_range(d, b, a1);
                    lo = lo.max(l);
                    hi = hi.min(h);
                }
                for a2 in lo..=hi {
                    if gcd_i64(a2, g) == 1 {
                        out.push(Coords { b, a1, a2 });
                    }
                }
            }
        }
    }
    out
}

fn shard_ranges(r: i64, shards: usize) -> Vec<(i64, i64)> {
    let shards = shards.max(1) as i64;
    let per = (r + shards - 1) / shards.max(1);
    (0..shards).map(|s| (s * per + 1, ((s + 1) * per).min(r))).filter(|(a, b)| a <= b).collect()
}

/// Coordinates of `B_K(R)` (optionally within a window) in `(b, a1, a2)` order.
/// Work is split into `shards` contiguous `b` ranges and concatenated in order.
pub fn enumerate_coords(field: Field, r: i64, window: Option<&Window>, shards: usize) -> Vec<Coords> {
    shard_ranges(r, shards)
        .into_par_iter()
        .map(|(b0, b1)| (b0..=b1).flat_map(|b| coords_for_b(field, r, b, window)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .concat()
}

/// Exact `|B_K(R)|` from sieve counts over the sign/zero patterns of the numerator.
pub fn count_ball(ball: &HeightBall) -> u128 {
    let r = ball.bound();
    if r < 1 {
        return 0;
    }
    let k = ball.field.degree() as u64;
    let mut total: u128 = 1; // (0, ..., 0, 1)
    for zeros in 0..k {
        let nonzero = k - zeros;
        let sides = vec![r as u64; nonzero as usize + 1];
        let q = sieve_count(&CountBox::from_ints(&sides).expect("sides >= 1"));
        let weight = binomial(k, zeros).to_u128().unwrap() << nonzero;
        total += weight * q;
    }
    total
}

fn coprime_in_range(lo: i64, hi: i64, g: i64, sq: &[(u64, i64)]) -> u128 {
    if lo > hi {
        return 0;
    }
    let g = g.unsigned_abs();
    let pos = |a: i64, b: i64| -> i64 {
        // coprime integers in [a, b] with 1 <= a
        if b < a {
            0
        } else {
            coprime_upto(g, b, sq) - coprime_upto(g, a - 1, sq)
        }
    };
    let zero = (lo <= 0 && 0 <= hi && g == 1) as i64;
    let positive = pos(lo.max(1), hi);
    let negative = pos((-hi).max(1), -lo);
    (zero + positive + negative) as u128
}

/// `|B_K(R) ∩ window|`, counted per denominator with Moebius sums over divisors.
pub fn count_ball_interval(field: Field, r: i64, window: &Window, shards: usize) -> u128 {
    let d = radicand(field);
    shard_ranges(r, shards)
        .into_par_iter()
        .map(|(b0, b1)| {
            let mut c = 0u128;
            for b in b0..=b1 {
                match field {
                    Field::Rational => {
                        let (l, h) = window.rational_range(b);
                        let sq = signed_squarefree_divisors(b as u64);
                        c += coprime_in_range(l.max(-r), h.min(r), b, &sq);
                    }
                    Field::Quadratic(_) => {
                        for a1 in -r..=r {
                            let g = gcd_i64(a1, b);
                            let (l, h) = window.surd_range(d, b, a1);
                            let sq = signed_squarefree_divisors(g as u64);
                            c += coprime_in_range(l.max(-r), h.min(r), g, &sq);
                        }
                    }
                }
            }
            c
        })
        .sum()
}

fn check_cap(needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// Every element of the ball once, in `(b, a1, a2)` order.
pub fn enumerate_ball(ball: &HeightBall, cap: u128) -> Result<Vec<Elem>> {
    check_cap(count_ball(ball), cap)?;
    Ok(enumerate_coords(ball.field, ball.bound(), None, 1).iter().map(|c| c.to_elem(ball.field)).collect())
}

/// The elements of the ball lying in `[lo, hi]`, in `(b, a1, a2)` order.
pub fn enumerate_ball_interval(ball: &HeightBall, lo: &Rational, hi: &Rational, cap: u128) -> Result<Vec<Elem>> {
    let w = Window::new(lo, hi)?;
    check_cap(count_ball_interval(ball.field, ball.bound(), &w, 1), cap)?;
    Ok(enumerate_coords(ball.field, ball.bound(), Some(&w), 1).iter().map(|c| c.to_elem(ball.field)).collect())
}

/// Sides of the inner box `Q(R) = Q(k+1, n) \ Q(k+1, m)` for the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QBoxSpec {
    pub field: Field,
    pub radius: Rational,
    pub n: Vec<Side>,
    pub m: Vec<Side>,
}

impl QBoxSpec {
    pub fn new(field: Field, radius: Rational) -> Result<Self> {
        let k = field.degree() as i64;
        if radius < Rational::from_int(k + 1) {
            return Err(Error::BadParameters(format!("Q(R) needs R >= {}", k + 1)));
        }
        let scale = &(&radius * &Rational::from_int(2)) / &Rational::from_int(k + 1);
        let mut n = vec![Side::rational(scale.clone())];
        if let Field::Quadratic(d) = field {
            n.push(Side::over_sqrt(scale, d.get() as u64));
        }
        let mut m = n.clone();
        n.push(Side::rational(radius.clone()));
        m.push(Side::rational(&(&radius * &Rational::from_int(k)) / &Rational::from_int(k + 1)));
        Ok(QBoxSpec { field, radius, n, m })
    }

    /// `2^k R^(k+1) / ((k+1)^(k+1) ||V|| zeta(k+1))`.
    pub fn main_term(&self) -> f64 {
        let k = self.field.degree() as i32;
        let v = self.field.radicand().map_or(1.0, |d| (d as f64).sqrt());
        let r = self.radius.to_f64();
        2f64.powi(k) * r.powi(k + 1) / ((k as f64 + 1.0).powi(k + 1) * v * crate::coprime::zeta(k as u32 + 1, 1e-12))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QBoxReport {
    pub field: String,
    pub radius: String,
    pub count: u128,
    pub main_term: f64,
    pub ratio: f64,
    pub checked: u64,
    pub exhaustive: bool,
    pub violations: u64,
}

fn qbox_member(spec: &QBoxSpec, t: &[i64]) -> Coords {
    match spec.field {
        Field::Rational => Coords { b: t[1], a1: t[0], a2: 0 },
        Field::Quadratic(_) => Coords { b: t[2], a1: t[0], a2: t[1] },
    }
}

fn qbox_violation(spec: &QBoxSpec, c: &Coords, two: &Rational) -> bool {
    let x = c.to_elem(spec.field);
    let in_ball = x.height() <= spec.radius.floor();
    !(in_ball && x.in_interval(&-two, two))
}

/// `|Q(R)|` and a membership check of `Q(R) ⊆ B_K(R) ∩ [-2, 2]`: exhaustive when the box
/// has at most `cap` points, otherwise on `samples` random members.
pub fn qbox(spec: &QBoxSpec, cap: u128, samples: u64, seed: u64) -> QBoxReport {
    let outer = CountBox::new(spec.n.clone()).expect("valid box");
    let inner = CountBox::new(spec.m.clone()).expect("valid box");
    let count = sieve_count(&outer) - sieve_count(&inner);
    let nf: Vec<i64> = outer.floors().iter().map(|&v| v as i64).collect();
    let mf = inner.floors()[nf.len() - 1] as i64;
    let two = Rational::from_int(2);
    let volume: u128 = nf.iter().map(|&v| v as u128).product();
    let (checked, violations, exhaustive) = if volume <= cap {
        let (heads, last) = nf.split_at(nf.len() - 1);
        let mut checked = 0u64;
        let mut bad = 0u64;
        let mut t: Vec<i64> = vec![1; nf.len()];
        let mut done = false;
        while !done {
            for b in mf + 1..=last[0] {
                t[nf.len() - 1] = b;
                if t.iter().fold(0, |g, &x| gcd_i64(g, x)) == 1 {
                    checked += 1;
                    bad += qbox_violation(spec, &qbox_member(spec, &t), &two) as u64;
                }
            }
            let mut i = heads.len();
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                if t[i] < heads[i] {
                    t[i] += 1;
                    break;
                }
                t[i] = 1;
            }
        }
        (checked, bad, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0u64;
        let mut bad = 0u64;
        while checked < samples {
            let mut t: Vec<i64> = nf[..nf.len() - 1].iter().map(|&n| rng.gen_range(1..=n)).collect();
            t.push(rng.gen_range(mf + 1..=nf[nf.len() - 1]));
            if t.iter().fold(0, |g, &x| gcd_i64(g, x)) != 1 {
                continue;
            }
            checked += 1;
            bad += qbox_violation(spec, &qbox_member(spec, &t), &two) as u64;
        }
        (checked, bad, false)
    };
    let main_term = spec.main_term();
    QBoxReport {
        field: spec.field.name(),
        radius: spec.radius.to_string(),
        count,
        main_term,
        ratio: count as f64 / main_term,
        checked,
        exhaustive,
        violations,
    }
}

/// Whether `x` (canonical) has height at most `r`.
pub fn in_ball(x: &Elem, r: &Rational) -> bool {
    Rational::from_int(x.height()) <= *r
}
