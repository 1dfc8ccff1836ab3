//! Counting relatively prime k-tuples in boxes `[1, n_1] x ... x [1, n_k]`.

use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ntheory::{factorize, gcd_i64};

pub const DEFAULT_BRUTE_CAP: u128 = 100_000_000;

/// A box side: `num / sqrt(root)`, with `root = 1` for a plain rational side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    num: Rational,
    root: u64,
}

impl Side {
    pub fn rational(r: Rational) -> Self {
        Side { num: r, root: 1 }
    }

    pub fn int(n: u64) -> Self {
        Side::rational(Rational::from_int(n))
    }

    /// The side `r / sqrt(d)`.
    pub fn over_sqrt(r: Rational, d: u64) -> Self {
        Side { num: r, root: d.max(1) }
    }

    pub fn floor(&self) -> u64 {
        if self.num.is_negative() {
            return 0;
        }
        let f = if self.root == 1 {
            self.num.floor()
        } else {
            // floor(r / sqrt(d)) = isqrt(floor(r^2 / d))
            let sq = &self.num * &self.num;
            (&sq / &Rational::from_int(self.root)).floor().sqrt()
        };
        f.to_u64().expect("box side fits in u64")
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / (self.root as f64).sqrt()
    }

    fn at_least_one(&self) -> bool {
        let one = Rational::from_int(1);
        if self.root == 1 {
            self.num >= one
        } else {
            !self.num.is_negative() && &self.num * &self.num >= Rational::from_int(self.root)
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/sqrt({})", self.num, self.root)
        }
    }
}

/// Box of `k >= 2` sides, each at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountBox {
    sides: Vec<Side>,
}

impl CountBox {
    pub fn new(sides: Vec<Side>) -> Result<Self> {
        if sides.len() < 2 {
            return Err(Error::BadParameters("a box needs at least two sides".into()));
        }
        if let Some(s) = sides.iter().find(|s| !s.at_least_one()) {
            return Err(Error::BadParameters(format!("box side {s} is below 1")));
        }
        Ok(CountBox { sides })
    }

    pub fn from_rationals(sides: &[Rational]) -> Result<Self> {
        Self::new(sides.iter().cloned().map(Side::rational).collect())
    }

    pub fn from_ints(sides: &[u64]) -> Result<Self> {
        Self::new(sides.iter().map(|&n| Side::int(n)).collect())
    }

    pub fn k(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn floors(&self) -> Vec<u64> {
        self.sides.iter().map(Side::floor).collect()
    }

    fn float_sides(&self) -> Vec<f64> {
        self.sides.iter().map(Side::to_f64).collect()
    }
}

/// Moebius function by trial division.
pub fn mobius(j: u64) -> i8 {
    assert!(j >= 1);
    let f = factorize(j);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `mu(0..=n)` by a linear sieve (`mu[0]` is unused and set to 0).
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

fn sieve_floors(floors: &[u64], mu: &[i8]) -> u128 {
    let jmax = *floors.iter().min().unwrap();
    if jmax == 0 {
        return 0;
    }
    let term = |j: u64| -> i128 {
        let m = mu[j as usize];
        if m == 0 {
            return 0;
        }
        let p: i128 = floors.iter().map(|&n| (n / j) as i128).product();
        m as i128 * p
    };
    let total: i128 = if jmax > 50_000 {
        let chunk = 8192u64;
        (0..jmax.div_ceil(chunk))
            .into_par_iter()
            .map(|c| (c * chunk + 1..=((c + 1) * chunk).min(jmax)).map(term).sum::<i128>())
            .sum()
    } else {
        (1..=jmax).map(term).sum()
    };
    total as u128
}

/// Exact number of coprime k-tuples in the box, by the Moebius sum.
pub fn sieve_count(b: &CountBox) -> u128 {
    let floors = b.floors();
    let jmax = *floors.iter().min().unwrap() as usize;
    sieve_floors(&floors, &mobius_table(jmax))
}

/// [`sieve_count`] with a shared Moebius table covering at least the smallest side.
pub fn sieve_count_with(b: &CountBox, mu: &[i8]) -> u128 {
    let floors = b.floors();
    let jmax = *floors.iter().min().unwrap() as usize;
    assert!(mu.len() > jmax, "Moebius table too short");
    sieve_floors(&floors, mu)
}

fn tuple_gcd(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd_i64(g, x))
}

/// Direct enumeration with a gcd test per tuple.
pub fn brute_count(b: &CountBox, cap: u128) -> Result<u128> {
    let floors = b.floors();
    let needed = floors.iter().map(|&n| n as u128).product::<u128>();
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let k = floors.len();
    let count = (1..=floors[0] as i64)
        .into_par_iter()
        .map(|first| {
            let mut t = vec![1i64; k];
            t[0] = first;
            let mut c = 0u128;
            loop {
                if tuple_gcd(&t) == 1 {
                    c += 1;
                }
                // odometer over coordinates 1..k
                let mut i = k - 1;
                loop {
                    if i == 0 {
                        return c;
                    }
                    if t[i] < floors[i] as i64 {
                        t[i] += 1;
                        break;
                    }
                    t[i] = 1;
                    i -= 1;
                }
            }
        })
        .sum();
    Ok(count)
}

/// Counts for every integer box with sides in `1..=max`, from a prefix-sum table
/// over the coprime-indicator grid.
pub struct BruteTable {
    k: usize,
    max: usize,
    prefix: Vec<u32>,
}

impl BruteTable {
    pub fn new(k: usize, max: usize) -> Self {
        assert!(k >= 1 && max >= 1);
        let side = max + 1;
        let size = side.pow(k as u32);
        let mut prefix = vec![0u32; size];
        let mut idx = vec![0usize; k];
        for (flat, slot) in prefix.iter_mut().enumerate() {
            let mut r = flat;
            for c in idx.iter_mut().rev() {
                *c = r % side;
                r /= side;
            }
            if idx.iter().all(|&c| c > 0) {
                let v: Vec<i64> = idx.iter().map(|&c| c as i64).collect();
                *slot = (tuple_gcd(&v) == 1) as u32;
            }
        }
        // inclusive prefix sums along each axis
        let mut stride = 1;
        for _ in 0..k {
            for flat in 0..size {
                if (flat / stride) % side != 0 {
                    prefix[flat] += prefix[flat - stride];
                }
            }
            stride *= side;
        }
        BruteTable { k, max, prefix }
    }

    pub fn count(&self, sides: &[u64]) -> u32 {
        assert_eq!(sides.len(), self.k);
        let side = self.max + 1;
        let flat = sides.iter().fold(0usize, |acc, &s| {
            assert!(s as usize <= self.max);
            acc * side + s as usize
        });
        self.prefix[flat]
    }
}

/// `max n_i / min n_i`.
pub fn eccentricity(b: &CountBox) -> f64 {
    let s = b.float_sides();
    let max = s.iter().cloned().fold(f64::MIN, f64::max);
    let min = s.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

/// Geometric mean of the sides.
pub fn geometric_mean(b: &CountBox) -> f64 {
    let s = b.float_sides();
    (s.iter().map(|x| x.ln()).sum::<f64>() / s.len() as f64).exp()
}

/// `gamma ln gamma` for k = 2, `gamma^(k-1)` otherwise.
pub fn error_term_budget(b: &CountBox) -> f64 {
    let g = geometric_mean(b);
    if b.k() == 2 {
        g * g.ln()
    } else {
        g.powi(b.k() as i32 - 1)
    }
}

/// `zeta(k)` to within `tol`, from a partial sum and the integral tail bounds.
pub fn zeta(k: u32, tol: f64) -> f64 {
    assert!(k >= 2 && tol > 0.0);
    let km1 = (k - 1) as f64;
    // tail lies in [(N+1)^(1-k), N^(1-k)] / (k-1); width is below N^(-k)
    let mut n: u64 = 1;
    while (n as f64).powi(-(k as i32)) > tol {
        n *= 2;
    }
    let partial: f64 = (1..=n).rev().map(|i| (i as f64).powi(-(k as i32))).sum();
    let lo = ((n + 1) as f64).powf(1.0 - k as f64) / km1;
    let hi = (n as f64).powf(1.0 - k as f64) / km1;
    partial + 0.5 * (lo + hi)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub k: usize,
    pub sides: Vec<String>,
    pub count: u128,
    pub main_term: f64,
    pub error: f64,
    pub f_k: f64,
    pub eccentricity: f64,
}

impl CountReport {
    pub const CSV_HEADER: &'static str = "k,sides,count,main_term,error,f_k,eccentricity";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.k,
            self.sides.join(";"),
            self.count,
            self.main_term,
            self.error,
            self.f_k,
            self.eccentricity
        )
    }
}

pub fn lehmer_report(b: &CountBox) -> CountReport {
    let count = sieve_count(b);
    let vol: f64 = b.float_sides().iter().product();
    let main_term = vol / zeta(b.k() as u32, 1e-12);
    CountReport {
        k: b.k(),
        sides: b.sides().iter().map(ToString::to_string).collect(),
        count,
        main_term,
        error: count as f64 - main_term,
        f_k: error_term_budget(b),
        eccentricity: eccentricity(b),
    }
}

/// `|prod x_i - prod y_i|` against `(2^k - 1) prod x_i / min x_i` for `|x_i - y_i| <= 1`.
pub fn perturbation_bound_holds(x: &[f64], y: &[f64]) -> bool {
    let px: f64 = x.iter().product();
    let py: f64 = y.iter().product();
    let min = x.iter().cloned().fold(f64::MAX, f64::min);
    let bound = ((1u64 << x.len()) - 1) as f64 * px / min;
    (px - py).abs() <= bound * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        let t = mobius_table(500);
        for j in 1..=500u64 {
            assert_eq!(t[j as usize], mobius(j));
        }
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_count(&CountBox::from_ints(&[4, 4]).unwrap()), 11);
        assert_eq!(sieve_count(&CountBox::from_ints(&[1, 1]).unwrap()), 1);
        assert_eq!(sieve_count(&CountBox::from_rationals(&[r("5.9"), r("3.2")]).unwrap()), 12);
    }

    #[test]
    fn brute_examples() {
        let b = |v: &[u64]| brute_count(&CountBox::from_ints(v).unwrap(), DEFAULT_BRUTE_CAP).unwrap();
        assert_eq!(b(&[2, 2, 2]), 7);
        assert_eq!(b(&[1, 1]), 1);
        assert_eq!(b(&[4, 4]), 11);
        let big = CountBox::from_ints(&[1000, 1000, 1000]).unwrap();
        assert!(matches!(brute_count(&big, DEFAULT_BRUTE_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rejects_bad_boxes() {
        assert!(CountBox::from_ints(&[5]).is_err());
        assert!(CountBox::from_rationals(&[r("1/2"), r("3")]).is_err());
        assert!(CountBox::new(vec![Side::over_sqrt(r("1"), 2), Side::int(3)]).is_err());
    }

    #[test]
    fn sqrt_sides_floor_exactly() {
        // 2R/(3 sqrt 2) for R = 300 is 141.42...
        assert_eq!(Side::over_sqrt(r("200"), 2).floor(), 141);
        assert_eq!(Side::over_sqrt(r("6"), 4).floor(), 3);
        assert_eq!(Side::over_sqrt(r("599/100"), 4).floor(), 2);
    }

    #[test]
    fn eccentricity_and_budget() {
        let b = |v: &[u64]| CountBox::from_ints(v).unwrap();
        assert_eq!(eccentricity(&b(&[4, 4])), 1.0);
        assert_eq!(eccentricity(&b(&[6, 2])), 3.0);
        assert_eq!(eccentricity(&b(&[2, 4, 8])), 4.0);
        assert!((error_term_budget(&b(&[2, 4, 8])) - 16.0).abs() < 1e-9);
        assert!((error_term_budget(&b(&[4, 4])) - 5.545177444479562).abs() < 1e-9);
        assert_eq!(error_term_budget(&b(&[1, 1])), 0.0);
    }

    #[test]
    fn zeta_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta(2, 1e-12) - pi * pi / 6.0).abs() < 1e-10);
        assert!((zeta(4, 1e-12) - pi.powi(4) / 90.0).abs() < 1e-10);
        assert!((zeta(3, 1e-10) - 1.2020569031595942).abs() < 1e-9);
    }

    #[test]
    fn lehmer_examples() {
        let rep = lehmer_report(&CountBox::from_ints(&[100, 100]).unwrap());
        assert_eq!(rep.count, 6087);
        assert!((rep.main_term - 6079.27).abs() < 0.01);
        assert!(rep.error.abs() <= rep.f_k);
        let rep = lehmer_report(&CountBox::from_ints(&[1, 1]).unwrap());
        assert_eq!(rep.count, 1);
        assert!((rep.main_term - 0.6079).abs() < 1e-3);
        assert!((rep.error - 0.3921).abs() < 1e-3);
        let b = CountBox::from_ints(&[10, 20, 40]).unwrap();
        let rep = lehmer_report(&b);
        assert_eq!(rep.count, brute_count(&b, DEFAULT_BRUTE_CAP).unwrap());
        assert!(rep.error.abs() / geometric_mean(&b).powi(2) < 1.0);
    }

    #[test]
    fn sieve_matches_brute_on_small_boxes() {
        for k in 2..=3usize {
            let table = BruteTable::new(k, 12);
            let mut idx = vec![1u64; k];
            loop {
                assert_eq!(sieve_count(&CountBox::from_ints(&idx).unwrap()), table.count(&idx) as u128);
                let mut i = 0;
                while i < k && idx[i] == 12 {
                    idx[i] = 1;
                    i += 1;
                }
                if i == k {
                    break;
                }
                idx[i] += 1;
            }
        }
        assert_eq!(BruteTable::new(2, 4).count(&[4, 4]), 11);
    }

    #[test]
    fn real_sided_random_boxes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let k = rng.gen_range(2..=4);
            let sides: Vec<Rational> =
                (0..k).map(|_| Rational::new(rng.gen_range(100i64..=2599), 100).unwrap()).collect();
            let b = CountBox::from_rationals(&sides).unwrap();
            assert_eq!(sieve_count(&b), brute_count(&b, DEFAULT_BRUTE_CAP).unwrap());
        }
    }

    #[test]
    fn error_scales_with_budget() {
        for k in 2..=3u32 {
            for n in [100u64, 1000, 10_000] {
                let b = CountBox::from_ints(&vec![n; k as usize]).unwrap();
                let rep = lehmer_report(&b);
                assert!(rep.error.abs() / rep.f_k <= 10.0, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn perturbation_bound_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let k = rng.gen_range(2..=5);
            let base: f64 = rng.gen_range(1.0..50.0);
            // eccentricity at most 4
            let x: Vec<f64> = (0..k).map(|_| base * rng.gen_range(1.0..4.0)).collect();
            let y: Vec<f64> = x.iter().map(|v| v + rng.gen_range(-1.0..=1.0)).collect();
            assert!(perturbation_bound_holds(&x, &y));
        }
    }

    proptest! {
        #[test]
        fn floor_invariance(a in 100u64..3000, b in 100u64..3000, c in 100u64..3000) {
            let real = CountBox::from_rationals(&[
                Rational::new(a as i64, 100).unwrap(),
                Rational::new(b as i64, 100).unwrap(),
                Rational::new(c as i64, 100).unwrap(),
            ]).unwrap();
            let ints = CountBox::from_ints(&real.floors()).unwrap();
            prop_assert_eq!(sieve_count(&real), sieve_count(&ints));
        }

        #[test]
        fn monotone_in_each_side(v in prop::collection::vec(1u64..60, 2..4), i in 0usize..4, extra in 1u64..10) {
            let i = i % v.len();
            let mut w = v.clone();
            w[i] += extra;
            let a = sieve_count(&CountBox::from_ints(&v).unwrap());
            let b = sieve_count(&CountBox::from_ints(&w).unwrap());
            prop_assert!(a <= b);
        }

        #[test]
        fn count_at_least_one(v in prop::collection::vec(1u64..200, 2..5)) {
            prop_assert!(sieve_count(&CountBox::from_ints(&v).unwrap()) >= 1);
        }
    }
}
